"""Exact Weierstrass curve arithmetic over Q and over prime fields.

Long Weierstrass form throughout:

    y^2 + a1*x*y + a3*y = x^3 + a2*x^2 + a4*x + a6

Singular cubics are allowed behind an explicit flag; group operations then
act on the non-singular locus.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .errors import (
    SingularCurveError,
    SingularPointError,
    SingularReduction,
)
from .numutil import factorize, primes_up_to

GOOD = "good"
SPLIT = "split_multiplicative"
NONSPLIT = "nonsplit_multiplicative"
ADDITIVE = "additive"


class Point:
    """Affine rational point or the identity (x is None)."""

    __slots__ = ("x", "y")

    def __init__(self, x=None, y=None):
        if x is None:
            self.x = None
            self.y = None
        else:
            self.x = Fraction(x)
            self.y = Fraction(y)

    @property
    def is_identity(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __repr__(self):
        if self.is_identity:
            return "O"
        return f"({self.x},{self.y})"


IDENTITY = Point()


@dataclass(frozen=True)
class WeierstrassCurve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    allow_singular: bool = False

    def __post_init__(self):
        for a in (self.a1, self.a2, self.a3, self.a4, self.a6):
            if not isinstance(a, int):
                raise TypeError("coefficients must be integers")
        if self.disc == 0 and not self.allow_singular:
            raise SingularCurveError(
                "discriminant is zero; pass allow_singular=True for cubic curves"
            )

    @property
    def b2(self):
        return self.a1**2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3**2 + 4 * self.a6

    @property
    def b8(self):
        return (
            self.a1**2 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3**2
            - self.a4**2
        )

    @property
    def c4(self):
        return self.b2**2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def disc(self):
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6

    @property
    def j_invariant(self):
        """j = c4^3 / disc as a reduced fraction; None for singular cubics."""
        if self.disc == 0:
            return None
        return Fraction(self.c4**3, self.disc)

    @property
    def is_singular(self):
        return self.disc == 0

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # -- point predicates --------------------------------------------------

    def contains(self, P):
        if P.is_identity:
            return True
        x, y = P.x, P.y
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x**3 + self.a2 * x * x + self.a4 * x + self.a6
        return lhs == rhs

    def singular_point(self):
        """The singular point over Q (as a Point), or None.

        Found as the double root of g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6
        together with y = -(a1 x + a3)/2.
        """
        if self.disc != 0:
            return None
        b2, b4, b6 = self.b2, self.b4, self.b6
        # rational roots of g'(x)/2 = 6x^2 + b2 x + b4, then test g(root) = 0
        disc_q = b2 * b2 - 24 * b4
        if disc_q < 0:
            return None
        s = isqrt(disc_q)
        candidates = []
        if s * s == disc_q:
            candidates = [Fraction(-b2 + s, 12), Fraction(-b2 - s, 12)]
        elif disc_q == 0:
            candidates = [Fraction(-b2, 12)]
        for x0 in candidates:
            if 4 * x0**3 + b2 * x0**2 + 2 * b4 * x0 + b6 == 0:
                y0 = -(self.a1 * x0 + self.a3) / 2
                return Point(x0, y0)
        return None

    def _check_operand(self, P):
        if P.is_identity:
            return
        if self.is_singular and P == self.singular_point():
            raise SingularPointError(f"{P} is the singular point of the cubic")

    # -- group law ---------------------------------------------------------

    def negate(self, P):
        if P.is_identity:
            return IDENTITY
        return Point(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P, Q):
        """Chord-tangent sum on E (or on the non-singular locus)."""
        self._check_operand(P)
        self._check_operand(Q)
        if P.is_identity:
            return Q
        if Q.is_identity:
            return P
        a1, a2, a3, a4, a6 = self.coefficients()
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return IDENTITY
            den = 2 * y1 + a1 * x1 + a3
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / den
            nu = (-(x1**3) + a4 * x1 + 2 * a6 - a3 * y1) / den
        else:
            lam = (y2 - y1) / (x2 - x1)
            nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return Point(x3, y3)

    def multiply(self, P, n):
        """[n]P by double-and-add; n may be any integer."""
        if n < 0:
            return self.multiply(self.negate(P), -n)
        result = IDENTITY
        addend = P
        while n:
            if n & 1:
                result = self.add(result, addend)
            n >>= 1
            if n:
                addend = self.add(addend, addend)
        return result

    # -- reduction ---------------------------------------------------------

    def reduce_mod_p(self, p):
        """Reduced curve over F_p together with its ReductionInfo."""
        reduced = CurveFp(p, *(a % p for a in self.coefficients()))
        return reduced, reduced.reduction_info()

    def reduction_kind(self, p):
        return self.reduce_mod_p(p)[1].kind

    def has_good_reduction(self, p):
        return self.disc % p != 0

    def count_points(self, p):
        """#E(F_p) for good reduction, #E_ns(F_p) otherwise."""
        reduced, info = self.reduce_mod_p(p)
        if info.kind != GOOD:
            return info.ns_order
        return reduced.count_points()

    def reduce_point(self, P, p):
        """ModPoint reduction of a rational point (identity if p divides a denominator)."""
        reduced, _ = self.reduce_mod_p(p)
        if P.is_identity:
            return ModPoint(p)
        if P.x.denominator % p == 0 or P.y.denominator % p == 0:
            return ModPoint(p)
        x = P.x.numerator * pow(P.x.denominator, -1, p) % p
        y = P.y.numerator * pow(P.y.denominator, -1, p) % p
        pt = ModPoint(p, x, y)
        pt.singular = reduced.is_singular_point(pt)
        return pt

    def is_nonsingular_at(self, P, p):
        """True iff P mod p avoids the singular point of the reduced curve."""
        return not self.reduce_point(P, p).singular

    def point_order_mod_p(self, P, p):
        """Exact order of P mod p in E_ns(F_p)."""
        reduced, info = self.reduce_mod_p(p)
        pt = self.reduce_point(P, p)
        if pt.singular:
            raise SingularReduction(f"point is singular mod {p}")
        if pt.is_identity:
            return 1
        n = reduced.count_points() if info.kind == GOOD else info.ns_order
        order = n
        for q, _ in factorize(n):
            while order % q == 0 and reduced.multiply(pt, order // q).is_identity:
                order //= q
        return order

    def is_nontorsion(self, P):
        """Mazur bound check: [m]P != O for 2 <= m <= 12."""
        if P.is_identity:
            return False
        acc = P
        for _ in range(2, 13):
            acc = self.add(acc, P)
            if acc.is_identity:
                return False
        return True

    def minimality_heuristic(self):
        """'minimal_certified' when no scaling prime is detected.

        Sufficient for p >= 5: no p with p^4 | c4 and p^12 | disc.  For
        p in {2, 3} only the crude disc-part bound is applied, so a large
        2- or 3-part downgrades the verdict.
        """
        if self.disc == 0:
            raise SingularCurveError("minimality is undefined for singular cubics")
        disc = abs(self.disc)
        for p in (2, 3):
            if disc % p**12 == 0:
                return "possibly_nonminimal"
        bound = min(10**6, integer_nth_root(disc, 12))
        for p in primes_up_to(bound):
            if p < 5:
                continue
            if self.c4 % p**4 == 0 and disc % p**12 == 0:
                return "possibly_nonminimal"
        return "minimal_certified"

    def __repr__(self):
        return f"WeierstrassCurve{self.coefficients()}"


def integer_nth_root(n, k):
    """Floor of n^(1/k) for n >= 0."""
    if n < 2:
        return n
    hi = 1 << ((n.bit_length() + k - 1) // k + 1)
    lo = 0
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


class ModPoint:
    """Point on a reduced curve: identity, or residues (x, y) mod p."""

    __slots__ = ("p", "x", "y", "singular")

    def __init__(self, p, x=None, y=None):
        self.p = p
        self.x = None if x is None else x % p
        self.y = None if y is None else y % p
        self.singular = False

    @property
    def is_identity(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, ModPoint):
            return NotImplemented
        return self.p == other.p and self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.p, self.x, self.y))

    def __repr__(self):
        return "O" if self.is_identity else f"({self.x},{self.y}) mod {self.p}"


@dataclass(frozen=True)
class ReductionInfo:
    p: int
    kind: str
    ns_order: int
    singular_point: tuple | None = None


@dataclass
class CurveFp:
    """A cubic in long Weierstrass form over F_p."""

    p: int
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    _singular_pt: tuple | None = field(default=None, repr=False)
    _singular_known: bool = field(default=False, repr=False)

    def coefficients(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b2(self):
        return (self.a1**2 + 4 * self.a2) % self.p

    @property
    def b4(self):
        return (2 * self.a4 + self.a1 * self.a3) % self.p

    @property
    def b6(self):
        return (self.a3**2 + 4 * self.a6) % self.p

    @property
    def disc(self):
        b2 = self.a1**2 + 4 * self.a2
        b4 = 2 * self.a4 + self.a1 * self.a3
        b6 = self.a3**2 + 4 * self.a6
        b8 = (
            self.a1**2 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3**2
            - self.a4**2
        )
        return (-(b2**2) * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6) % self.p

    def contains(self, pt):
        if pt.is_identity:
            return True
        p, x, y = self.p, pt.x, pt.y
        lhs = (y * y + self.a1 * x * y + self.a3 * y) % p
        rhs = (x**3 + self.a2 * x * x + self.a4 * x + self.a6) % p
        return lhs == rhs

    # -- singular locus ----------------------------------------------------

    def singular_point(self):
        """(x0, y0) of the unique singular point, or None if nonsingular."""
        if self._singular_known:
            return self._singular_pt
        self._singular_known = True
        if self.disc != 0:
            self._singular_pt = None
            return None
        self._singular_pt = self._locate_singular_point()
        return self._singular_pt

    def _locate_singular_point(self):
        p = self.p
        if p <= 3:
            # direct search over <= p^2 candidates; no characteristic tricks
            for x in range(p):
                for y in range(p):
                    pt = ModPoint(p, x, y)
                    if self.contains(pt) and self._partials_vanish(x, y):
                        return (x, y)
            return None
        b2, b4, b6 = self.b2, self.b4, self.b6
        # double root of g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 via gcd(g, g')
        g = [4 % p, b2, (2 * b4) % p, b6]
        dg = [12 % p, (2 * b2) % p, (2 * b4) % p]
        common = _poly_gcd(g, dg, p)
        if len(common) == 1:
            return None
        if len(common) == 2:
            x0 = -common[1] * pow(common[0], -1, p) % p
        else:
            # g and g' share a quadratic factor: g has a triple root
            # 4x^3 + b2 x^2 + ... with triple root at -b2/12
            x0 = -b2 * pow(12, -1, p) % p
        y0 = -(self.a1 * x0 + self.a3) * pow(2, -1, p) % p
        if self._partials_vanish(x0, y0) and self.contains(ModPoint(p, x0, y0)):
            return (x0, y0)
        return None

    def _partials_vanish(self, x, y):
        p = self.p
        fx = (self.a1 * y - 3 * x * x - 2 * self.a2 * x - self.a4) % p
        fy = (2 * y + self.a1 * x + self.a3) % p
        return fx == 0 and fy == 0

    def is_singular_point(self, pt):
        if pt.is_identity:
            return False
        sp = self.singular_point()
        return sp is not None and (pt.x, pt.y) == sp

    def reduction_info(self):
        """Classify the reduction type and the order of the non-singular locus."""
        p = self.p
        sp = self.singular_point()
        if sp is None:
            return ReductionInfo(p, GOOD, self.count_points())
        # shift the singular point to the origin; the tangent-cone quadratic
        # is m^2 + a1*m - a2' with a2' = a2 + 3*x0 (a1 is shift-invariant)
        x0, _ = sp
        a1 = self.a1 % p
        a2s = (self.a2 + 3 * x0) % p
        if p == 2:
            if a1 % 2 == 0:
                return ReductionInfo(p, ADDITIVE, p, sp)
            kind = SPLIT if a2s % 2 == 0 else NONSPLIT
            return ReductionInfo(p, kind, p - 1 if kind == SPLIT else p + 1, sp)
        d = (a1 * a1 + 4 * a2s) % p
        if d == 0:
            return ReductionInfo(p, ADDITIVE, p, sp)
        if pow(d, (p - 1) // 2, p) == 1:
            return ReductionInfo(p, SPLIT, p - 1, sp)
        return ReductionInfo(p, NONSPLIT, p + 1, sp)

    # -- counting ----------------------------------------------------------

    def count_points(self):
        """#E(F_p) by quadratic-character sweep (odd p) or enumeration (p = 2)."""
        p = self.p
        if p == 2:
            count = 1
            for x in range(2):
                for y in range(2):
                    if self.contains(ModPoint(2, x, y)):
                        count += 1
            return count
        b2, b4, b6 = self.b2, self.b4, self.b6
        # completed square: (2y + a1 x + a3)^2 = g(x)
        qr = bytearray(p)
        for v in range(1, p):
            qr[v * v % p] = 1
        total = p + 1
        for x in range(p):
            g = (((4 * x + b2) * x + 2 * b4) * x + b6) % p
            if g == 0:
                continue
            total += 1 if qr[g] else -1
        return total

    # -- group law on the non-singular locus -------------------------------

    def _check_operand(self, pt):
        if not pt.is_identity and self.is_singular_point(pt):
            raise SingularPointError(f"{pt} is the singular point mod {self.p}")

    def negate(self, pt):
        if pt.is_identity:
            return pt
        return ModPoint(self.p, pt.x, -pt.y - self.a1 * pt.x - self.a3)

    def add(self, P, Q):
        self._check_operand(P)
        self._check_operand(Q)
        if P.is_identity:
            return Q
        if Q.is_identity:
            return P
        p = self.p
        a1, a2, a3, a4, a6 = self.coefficients()
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        if x1 == x2:
            if (y1 + y2 + a1 * x2 + a3) % p == 0:
                return ModPoint(p)
            den = (2 * y1 + a1 * x1 + a3) % p
            inv = pow(den, -1, p)
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * inv % p
            nu = (-(x1**3) + a4 * x1 + 2 * a6 - a3 * y1) * inv % p
        else:
            inv = pow(x2 - x1, -1, p)
            lam = (y2 - y1) * inv % p
            nu = (y1 - lam * x1) % p
        x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
        y3 = (-(lam + a1) * x3 - nu - a3) % p
        return ModPoint(p, x3, y3)

    def multiply(self, pt, n):
        if n < 0:
            return self.multiply(self.negate(pt), -n)
        result = ModPoint(self.p)
        addend = pt
        while n:
            if n & 1:
                result = self.add(result, addend)
            n >>= 1
            if n:
                addend = self.add(addend, addend)
        return result

    def points(self):
        """All points including the identity (enumeration; small p only)."""
        pts = [ModPoint(self.p)]
        for x in range(self.p):
            for y in range(self.p):
                pt = ModPoint(self.p, x, y)
                if self.contains(pt):
                    pts.append(pt)
        return pts


def _poly_gcd(f, g, p):
    """Monic gcd of coefficient lists (descending powers) over F_p."""

    def strip(h):
        i = 0
        while i < len(h) - 1 and h[i] % p == 0:
            i += 1
        return [c % p for c in h[i:]]

    f, g = strip(f), strip(g)
    if f == [0]:
        return g
    if g == [0]:
        return f
    while g != [0]:
        f, g = g, _poly_mod(f, g, p)
        g = strip(g)
    inv = pow(f[0], -1, p)
    return [c * inv % p for c in f]


def _poly_mod(f, g, p):
    """Remainder of f by g over F_p (descending coefficient lists)."""
    f = list(f)
    inv = pow(g[0], -1, p)
    while len(f) >= len(g) and any(c % p for c in f):
        if f[0] % p == 0:
            f.pop(0)
            continue
        factor = f[0] * inv % p
        for i in range(len(g)):
            f[i] = (f[i] - factor * g[i]) % p
        f.pop(0)
    if not f:
        return [0]
    return f
