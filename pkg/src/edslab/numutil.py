"""Prime sieve, trial-division factorization, and exact arithmetic helpers."""

from math import gcd, isqrt

from .errors import FactorizationFailure, ZeroArgument

SIEVE_BOUND = 10**6

_sieve_primes: list[int] = []
_sieve_limit = 0


def primes_up_to(n):
    """All primes <= n, from a cached Eratosthenes sieve."""
    global _sieve_primes, _sieve_limit
    if n > _sieve_limit:
        limit = max(n, 1 << 16)
        sieve = bytearray([1]) * (limit + 1)
        sieve[0:2] = b"\x00\x00"
        for p in range(2, isqrt(limit) + 1):
            if sieve[p]:
                sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
        _sieve_primes = [i for i in range(limit + 1) if sieve[i]]
        _sieve_limit = limit
    # bisect by hand to avoid importing for one call
    lo, hi = 0, len(_sieve_primes)
    while lo < hi:
        mid = (lo + hi) // 2
        if _sieve_primes[mid] <= n:
            lo = mid + 1
        else:
            hi = mid
    return _sieve_primes[:lo]


def is_prime(n):
    """Deterministic primality by trial division against the sieve.

    Raises FactorizationFailure above SIEVE_BOUND**2.
    """
    if n < 2:
        return False
    if n > SIEVE_BOUND * SIEVE_BOUND:
        raise FactorizationFailure(f"{n} exceeds trial-division scale")
    for p in primes_up_to(isqrt(n)):
        if n % p == 0:
            return n == p
    return True


def factorize(n):
    """Prime factorization [(p, e), ...] by trial division (sieve to 10^6).

    Deliberately refuses inputs it cannot finish deterministically.
    """
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    factors = []
    rest = n
    for p in primes_up_to(min(SIEVE_BOUND, isqrt(n) + 1)):
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
    if rest > 1:
        if rest <= SIEVE_BOUND * SIEVE_BOUND:
            factors.append((rest, 1))  # no divisor <= 10^6, so rest is prime
        else:
            raise FactorizationFailure(
                f"cofactor {rest} of {n} exceeds trial-division scale"
            )
    return factors


def divisors(n):
    """Sorted list of all positive divisors of n."""
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def valuation(x, p):
    """ord_p(x) for nonzero integer x."""
    if x == 0:
        raise ZeroArgument("valuation of 0 is undefined")
    x = abs(x)
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def crt_pair(r1, m1, r2, m2):
    """Combine x = r1 (mod m1), x = r2 (mod m2) for coprime m1, m2."""
    g = gcd(m1, m2)
    if g != 1:
        raise ValueError("moduli not coprime")
    m = m1 * m2
    inv = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % m


def coprime_split(m, g):
    """Split m = a*b with gcd(a, b) = 1, a collecting all primes of g.

    Returns (a, b); b == 1 means the split failed (m is supported on g's primes).
    """
    a, b = g, m // g
    while True:
        h = gcd(a, b)
        if h == 1:
            return a, b
        a *= h
        b //= h


def cmp_sqrt_form(a, b, p, c):
    """Sign of (a + b*sqrt(p)) - c for integers a, c and b >= 0. Exact."""
    if b < 0:
        raise ValueError("b must be nonnegative")
    if a >= c:
        return 0 if (a == c and b == 0) else 1
    lhs = b * b * p
    rhs = (c - a) ** 2
    return (lhs > rhs) - (lhs < rhs)


def sqrt_form_pow(p, exponent):
    """(p + 1 + 2*sqrt(p))^exponent as (A, B) with value A + B*sqrt(p)."""
    a, b = 1, 0
    for _ in range(exponent):
        a, b = a * (p + 1) + 2 * b * p, 2 * a + b * (p + 1)
    return a, b
