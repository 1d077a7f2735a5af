"""Sequence terms D_n, division-polynomial values W_n, and valuations.

D_n is the square root of the denominator of x([n]P) in lowest terms.
W_n is the n-th division polynomial evaluated at P; at primes of good
reduction ord_p(D_n) = ord_p(W_n), which lets us read off valuations of
astronomically large terms from residues of W_n.
"""

import math
import os
import sys
from dataclasses import dataclass
from math import gcd, isqrt

from .curves import GOOD, IDENTITY, SPLIT, NONSPLIT
from .errors import (
    NonSquareDenominator,
    PreconditionError,
    TermCapExceeded,
    TorsionPointError,
    VerificationError,
)
from .numutil import coprime_split, crt_pair, valuation

DEFAULT_TERM_CAP = 10_000
TERM_CAP_ENV = "EDSLAB_TERM_CAP"
VALUATION_K_CAP = 64


def _env_term_cap():
    raw = os.environ.get(TERM_CAP_ENV)
    if raw is None:
        return DEFAULT_TERM_CAP
    return int(raw)


@dataclass
class ValuationReport:
    """Both sides of the p-divisibility growth law at index pair (n, m)."""

    p: int
    n: int
    m: int
    lhs: int  # ord_p(D_{mn})
    rhs: int  # ord_p(m * D_n)
    strict: bool
    flag_p_is_2: bool
    flag_m_even: bool
    flag_ord_one: bool
    flag_ordinary_or_multiplicative: bool

    @property
    def exceptional(self):
        return (
            self.flag_p_is_2
            and self.flag_m_even
            and self.flag_ord_one
            and self.flag_ordinary_or_multiplicative
        )


class EdsContext:
    """A (curve, point) pair with memoized exact terms and W-evaluators.

    Single-writer: term computation fills caches.  Not for concurrent
    mutation; warm it up first if sharing read-only.
    """

    def __init__(self, curve, point, term_cap=None, check_nontorsion=True):
        if point.is_identity:
            raise PreconditionError("base point must not be the identity")
        if not curve.contains(point):
            raise PreconditionError(f"{point} is not on {curve}")
        if curve.is_singular and point == curve.singular_point():
            raise PreconditionError("base point is the singular point")
        if check_nontorsion and not curve.is_nontorsion(point):
            raise TorsionPointError(f"{point} is torsion (order <= 12)")
        self.curve = curve
        self.point = point
        self.term_cap = _env_term_cap() if term_cap is None else term_cap
        self.normalized = False
        self._d1 = None
        self._multiples = {0: IDENTITY, 1: point}
        self._terms = {}  # n -> (A_n, B_n, D_n) for the raw (un-normalized) sequence
        self._ward_exact = None
        self._ward_mod_caches = {}

    # -- exact terms -------------------------------------------------------

    def multiple(self, n):
        """[n]P with memoization (n >= 0)."""
        cache = self._multiples
        if n in cache:
            return cache[n]
        stack = [n]
        while stack:
            k = stack[-1]
            if k in cache:
                stack.pop()
                continue
            a, b = k // 2, k - k // 2
            if a in cache and b in cache:
                cache[k] = self.curve.add(cache[a], cache[b])
                stack.pop()
            else:
                if a not in cache:
                    stack.append(a)
                if b not in cache:
                    stack.append(b)
        return cache[n]

    def term_triple(self, n):
        """(A_n, B_n, D_n) with x([n]P) = A/D^2 and y([n]P) = B/D^3."""
        if n < 1:
            raise PreconditionError("term index must be >= 1")
        if n in self._terms:
            return self._terms[n]
        if n > self.term_cap:
            raise TermCapExceeded(
                f"index {n} above exact-term cap {self.term_cap}; "
                f"set {TERM_CAP_ENV} or term_cap to override"
            )
        pt = self.multiple(n)
        if pt.is_identity:
            raise TorsionPointError(f"[{n}]P is the identity")
        den = pt.x.denominator
        d = isqrt(den)
        if d * d != den:
            raise NonSquareDenominator(
                f"denominator of x([{n}]P) is not a perfect square: {den}"
            )
        if pt.y.denominator != d**3:
            raise NonSquareDenominator(
                f"denominator of y([{n}]P) is not D^3 at index {n}"
            )
        triple = (pt.x.numerator, pt.y.numerator, d)
        self._terms[n] = triple
        return triple

    def term(self, n):
        """D_n (divided by D_1 on a normalized context)."""
        d = self.term_triple(n)[2]
        if self.normalized:
            d1 = self._base_d1()
            if d % d1:
                raise VerificationError(f"D_1 does not divide D_{n}")
            return d // d1
        return d

    def terms(self, count):
        return [self.term(n) for n in range(1, count + 1)]

    def _base_d1(self):
        if self._d1 is None:
            self._d1 = self.term_triple(1)[2]
        return self._d1

    def normalize(self):
        """Context whose terms are D_n / D_1.

        Note: normalizing may lose minimality of the underlying model; the
        division is performed on terms, not by a change of variables.
        """
        ctx = EdsContext(
            self.curve, self.point, term_cap=self.term_cap, check_nontorsion=False
        )
        ctx.normalized = True
        ctx._base_d1()
        return ctx

    # -- division-polynomial values ---------------------------------------

    @property
    def integral_point(self):
        return self.point.x.denominator == 1 and self.point.y.denominator == 1

    def _ward_initials(self):
        """(psi_0 .. psi_4) at P, as exact integers; requires integral P."""
        if not self.integral_point:
            raise PreconditionError("W-sequence requires an integral base point")
        x, y = self.point.x.numerator, self.point.y.numerator
        c = self.curve
        b2, b4, b6, b8 = c.b2, c.b4, c.b6, c.b8
        psi2 = 2 * y + c.a1 * x + c.a3
        psi3 = 3 * x**4 + b2 * x**3 + 3 * b4 * x**2 + 3 * b6 * x + b8
        psi4 = psi2 * (
            2 * x**6
            + b2 * x**5
            + 5 * b4 * x**4
            + 10 * b6 * x**3
            + 10 * b8 * x**2
            + (b2 * b8 - b4 * b6) * x
            + (b4 * b8 - b6**2)
        )
        return [0, 1, psi2, psi3, psi4]

    def ward_value(self, n):
        """Exact W_n = psi_n(P)."""
        if n > self.term_cap:
            raise TermCapExceeded(f"index {n} above exact-term cap {self.term_cap}")
        if self._ward_exact is None:
            self._ward_exact = self._ward_initials()
        w = self._ward_exact
        psi2 = w[2]
        if psi2 == 0:
            raise TorsionPointError("base point is 2-torsion")
        while len(w) <= n:
            k = len(w)
            half = k // 2
            if k % 2:
                val = w[half + 2] * w[half] ** 3 - w[half - 1] * w[half + 1] ** 3
            else:
                num = w[half] * (
                    w[half + 2] * w[half - 1] ** 2 - w[half - 2] * w[half + 1] ** 2
                )
                if num % psi2:
                    raise VerificationError(f"W_{k} duplication is not integral")
                val = num // psi2
            w.append(val)
        return w[n]

    def ward_exact(self, count):
        """W_1 .. W_count exactly."""
        self.ward_value(count)
        return self._ward_exact[1 : count + 1]

    def ward_mod(self, n, modulus):
        """W_n mod modulus via block doubling.

        Splits the modulus by CRT when psi_2 is not invertible; falls back
        to the exact value when the modulus cannot be split.
        """
        if modulus < 1:
            raise PreconditionError("modulus must be >= 1")
        if modulus == 1:
            return 0
        initials = self._ward_initials()
        psi2 = initials[2] % modulus
        try:
            inv2 = pow(psi2, -1, modulus)
        except ValueError:
            g = gcd(psi2, modulus)
            if g == modulus:
                return self.ward_value(n) % modulus
            a, b = coprime_split(modulus, g)
            if b == 1:
                return self.ward_value(n) % modulus
            return crt_pair(self.ward_mod(n, a), a, self.ward_mod(n, b), b)
        cache = self._ward_mod_caches.setdefault(
            modulus, {i: v % modulus for i, v in enumerate(initials)}
        )
        return self._psi_mod(n, modulus, inv2, cache)

    def _psi_mod(self, n, m, inv2, cache):
        if n in cache:
            return cache[n]
        stack = [n]
        while stack:
            k = stack[-1]
            if k in cache:
                stack.pop()
                continue
            half = k // 2
            need = (
                (half - 1, half, half + 1, half + 2)
                if k % 2
                else (half - 2, half - 1, half, half + 1, half + 2)
            )
            missing = [i for i in need if i not in cache]
            if missing:
                stack.extend(missing)
                continue
            if k % 2:
                val = (
                    cache[half + 2] * pow(cache[half], 3, m)
                    - cache[half - 1] * pow(cache[half + 1], 3, m)
                ) % m
            else:
                val = (
                    cache[half]
                    * (
                        cache[half + 2] * cache[half - 1] ** 2
                        - cache[half - 2] * cache[half + 1] ** 2
                    )
                    * inv2
                ) % m
            cache[k] = val
            stack.pop()
        return cache[n]

    # -- valuations --------------------------------------------------------

    def term_valuation(self, n, p):
        """ord_p(D_n), via residues of W_n at good primes, exactly otherwise."""
        if self.integral_point and self.curve.disc % p != 0:
            mod = p
            for k in range(1, VALUATION_K_CAP + 1):
                if self.ward_mod(n, mod) != 0:
                    return k - 1
                mod *= p
            # absurd valuation; trust nothing and compute exactly
        return valuation(self.term(n), p)

    def term_divisible_by(self, n, q):
        """Whether q = p^e divides D_n, without materializing D_n (good p)."""
        p, e = _prime_power(q)
        if self.integral_point and self.curve.disc % p != 0:
            return self.ward_mod(n, q) == 0
        return self.term_valuation(n, p) >= e

    def ordinary_or_multiplicative_at_2(self):
        kind = self.curve.reduction_kind(2)
        if kind == GOOD:
            return self.curve.count_points(2) % 2 == 0
        return kind in (SPLIT, NONSPLIT)

    def check_formal_group(self, p, n, m):
        """ValuationReport for ord_p(D_{mn}) vs ord_p(m D_n); requires p | D_n."""
        vn = self.term_valuation(n, p)
        if vn == 0:
            raise PreconditionError(f"{p} does not divide D_{n}")
        lhs = self.term_valuation(m * n, p)
        rhs = valuation(m, p) + vn
        report = ValuationReport(
            p=p,
            n=n,
            m=m,
            lhs=lhs,
            rhs=rhs,
            strict=lhs > rhs,
            flag_p_is_2=(p == 2),
            flag_m_even=(m % 2 == 0),
            flag_ord_one=(vn == 1),
            flag_ordinary_or_multiplicative=self.ordinary_or_multiplicative_at_2(),
        )
        if report.lhs < report.rhs:
            raise VerificationError(f"valuation growth law violated: {report}")
        if report.strict != report.exceptional:
            raise VerificationError(f"strictness/flag mismatch: {report}")
        return report

    def growth_diagnostic(self, count):
        """log(D_n) / n^2 for n = 1..count; an empirical height probe only."""
        out = []
        for n in range(1, count + 1):
            out.append(math.log(self.term(n)) / (n * n))
        return out

    def __repr__(self):
        tag = " normalized" if self.normalized else ""
        return f"EdsContext({self.curve}, {self.point}{tag})"


def _prime_power(q):
    """(p, e) with q = p^e; raises if q is not a prime power."""
    from .numutil import factorize

    factors = factorize(q)
    if len(factors) != 1:
        raise PreconditionError(f"{q} is not a prime power")
    return factors[0]


sys.setrecursionlimit(max(sys.getrecursionlimit(), 10_000))
