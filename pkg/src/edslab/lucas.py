"""Lucas sequences of the first kind and the nodal-cubic correspondence.

L_0 = 0, L_1 = 1, L_{n+2} = a L_{n+1} - b L_n.  The index-divisibility
arrow structure of such a sequence is fully described by Smyth's
theorem, which serves here as an oracle for the elliptic machinery:
the nodal cubic y^2 + 3xy + 3y = x^3 + 2x^2 + x with base point (0,0)
generates the a=3, b=1 sequence (the even-indexed Fibonacci numbers).
"""

from dataclasses import dataclass
from math import gcd

from .curves import Point, WeierstrassCurve
from .errors import PreconditionError
from .numutil import primes_up_to

NODAL_CUBIC = WeierstrassCurve(3, 2, 3, 1, 0, allow_singular=True)
NODAL_POINT = Point(0, 0)


@dataclass
class SmythPrediction:
    a: int
    b: int
    source: int
    targets: list  # predicted arrow targets within the bound
    exceptional: dict  # the B set, {1: 6}, {1: 12}, or {}


def lucas_terms(a, b, count):
    """L_1 .. L_count exactly."""
    out = []
    prev, cur = 0, 1
    for _ in range(count):
        out.append(cur)
        prev, cur = cur, a * cur - b * prev
    return out


def _lucas_mod(a, b, n, m):
    """L_n mod m by running the recursion modularly."""
    prev, cur = 0, 1 % m
    for _ in range(n - 1):
        prev, cur = cur, (a * cur - b * prev) % m
    return cur


def lucas_divset(a, b, bound):
    """All n <= bound with n | L_n."""
    return [n for n in range(1, bound + 1) if _lucas_mod(a, b, n, n) == 0]


def exceptional_arrows(a, b):
    """The extra arrow set B at the vertex 1, by the congruence table."""
    if a % 6 == 3 and b % 6 in (1, 5):
        return {1: 6}
    if a % 6 in (1, 5) and b % 6 == 5:
        return {1: 12}
    return {}


def smyth_arrows(a, b, n, bound):
    """Predicted arrow targets from vertex n.

    Prime weights: np for primes p | L_n * delta (tested modularly, so only
    primes up to bound/n matter).  The exceptional composite weight (6 or
    12 per the congruence table) applies at every vertex coprime to 6
    where neither 2 nor 3 divides L_n * delta; at such vertices no prime
    arrow of weight 2 or 3 intervenes, so the jump is minimal.
    """
    delta = a * a - 4 * b
    if delta == 0:
        raise PreconditionError("degenerate sequence: a^2 - 4b = 0")
    targets = []
    for p in primes_up_to(bound // n) if bound >= n else []:
        if delta % p == 0 or _lucas_mod(a, b, n, p) == 0:
            targets.append(n * p)
    extra = exceptional_arrows(a, b)
    if extra:
        w = extra[1]
        if (gcd(n, 6) == 1 and n * w <= bound
                and all(delta % p and _lucas_mod(a, b, n, p) for p in (2, 3))):
            targets = sorted(targets + [n * w])
    return SmythPrediction(a, b, n, targets, extra)


def _brute_arrows(elements):
    members = set(elements)
    out = {}
    for n in elements:
        targets = []
        for m in elements:
            if m <= n or m % n != 0:
                continue
            if any(k != n and k != m and k % n == 0 and m % k == 0
                   for k in members):
                continue
            targets.append(m)
        out[n] = targets
    return out


def compare_smyth(a, b, bound):
    """Brute-force arrows vs the predicted ones; a correct pair diffs empty.

    Comparison is clipped to targets whose full divisor lattice sits
    inside the bound, since brute-force minimality is only exact there.
    """
    elements = lucas_divset(a, b, bound)
    brute = _brute_arrows(elements)
    diffs = []
    for n in elements:
        predicted = set(smyth_arrows(a, b, n, bound).targets)
        actual = set(brute[n])
        missing = sorted(actual - predicted)
        spurious = sorted(t for t in predicted - actual if t <= bound)
        if missing or spurious:
            diffs.append({"vertex": n, "missing": missing, "spurious": spurious})
    return diffs


def singular_eds_crosscheck(count):
    """Termwise comparison of the nodal-cubic sequence with Lucas(3, 1).

    Returns the list of disagreeing indices; empty means the check passed.
    """
    from .eds import EdsContext

    ctx = EdsContext(NODAL_CUBIC, NODAL_POINT, check_nontorsion=False)
    expected = lucas_terms(3, 1, count)
    bad = []
    for n in range(1, count + 1):
        if ctx.term(n) != expected[n - 1]:
            bad.append(n)
    return bad
