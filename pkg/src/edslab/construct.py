"""Curves with prescribed ranks of apparition, by finite-field search + CRT.

Each prescription (p, n, k) asks for #E(F_p) = k*n with a point of exact
order n.  A curve is found per prime by exhaustive coefficient search,
the point is translated to (0,0), and the coefficients are glued by the
Chinese remainder theorem into a curve over Q with base point (0,0).
"""

from dataclasses import dataclass

from .curves import CurveFp, ModPoint, Point, WeierstrassCurve
from .errors import NotFound, PreconditionError, VerificationError
from .numutil import crt_pair

SEARCH_PRIME_CAP = 1000


@dataclass
class PrescribedDatum:
    p: int
    n: int  # target point order
    k: int  # cofactor, #E(F_p) = k*n

    @property
    def group_order(self):
        return self.k * self.n

    def check_feasible(self):
        if self.n < 1 or self.k < 1:
            raise PreconditionError("order and cofactor must be positive")
        gap = abs(self.p + 1 - self.group_order)
        if gap * gap >= 4 * self.p:
            raise PreconditionError(
                f"group order {self.group_order} out of Hasse range for p={self.p}"
            )


@dataclass
class ConstructionResult:
    curve: WeierstrassCurve
    point: Point
    records: list  # per prime: dict with achieved counts and orders
    nontorsion: bool


def _coefficient_space(p):
    """Deterministic lexicographic sweep of Weierstrass tuples mod p.

    Long form for p in {2, 3} (short form is not general there),
    short form y^2 = x^3 + a4 x + a6 otherwise.
    """
    if p <= 3:
        for a1 in range(p):
            for a2 in range(p):
                for a3 in range(p):
                    for a4 in range(p):
                        for a6 in range(p):
                            yield (a1, a2, a3, a4, a6)
    else:
        for a4 in range(p):
            for a6 in range(p):
                yield (0, 0, 0, a4, a6)


def search_curve_mod_p(p, group_order, point_order):
    """First curve/point (lexicographic) with the prescribed orders mod p.

    Returns (CurveFp, ModPoint) where the point has exact order point_order
    and the curve has group_order points.
    """
    if p > SEARCH_PRIME_CAP:
        raise PreconditionError(f"search prime {p} above cap {SEARCH_PRIME_CAP}")
    if group_order % point_order != 0:
        raise PreconditionError("point order must divide group order")
    gap = abs(p + 1 - group_order)
    if gap * gap >= 4 * p:
        raise PreconditionError(f"group order {group_order} violates the Hasse bound")
    for coeffs in _coefficient_space(p):
        curve = CurveFp(p, *coeffs)
        if curve.disc == 0:
            continue
        if curve.count_points() != group_order:
            continue
        for pt in curve.points():
            if pt.is_identity:
                continue
            if _exact_order(curve, pt, group_order) == point_order:
                return curve, pt
    raise NotFound(
        f"no curve mod {p} with {group_order} points and a point of "
        f"order {point_order} in search space"
    )


def _exact_order(curve, pt, group_order):
    if not curve.multiply(pt, group_order).is_identity:
        raise VerificationError("point order does not divide the group order")
    order = group_order
    for q in _prime_divisors(group_order):
        while order % q == 0 and curve.multiply(pt, order // q).is_identity:
            order //= q
    return order


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def translate_point_to_origin(curve, pt):
    """Shift coordinates so pt lands on (0,0); group structure unchanged."""
    if pt.is_identity:
        raise PreconditionError("cannot translate the identity to the origin")
    p, r, t = curve.p, pt.x, pt.y
    a1, a2, a3, a4, a6 = curve.coefficients()
    b1 = a1
    b2 = (a2 + 3 * r) % p
    b3 = (a3 + r * a1 + 2 * t) % p
    b4 = (a4 + 2 * r * a2 - t * a1 + 3 * r * r) % p
    b6 = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) % p
    shifted = CurveFp(p, b1, b2, b3, b4, b6)
    origin = ModPoint(p, 0, 0)
    if not shifted.contains(origin):
        raise VerificationError("translated point is not on the shifted curve")
    return shifted, origin


def crt_curve(data, symmetric=False):
    """Glue per-prime curves into one over Q with base point (0,0).

    symmetric picks coefficient representatives in (-M/2, M/2] instead of
    [0, M) for the CRT modulus M.
    """
    if not data:
        raise PreconditionError("empty prescription list")
    primes = [d.p for d in data]
    if len(set(primes)) != len(primes):
        raise PreconditionError("prescription primes must be distinct")
    for d in data:
        d.check_feasible()
    local = []
    for d in data:
        curve, pt = search_curve_mod_p(d.p, d.group_order, d.n)
        shifted, origin = translate_point_to_origin(curve, pt)
        if _exact_order(shifted, origin, d.group_order) != d.n:
            raise VerificationError("translation changed the point order")
        local.append((d, shifted))
    coeffs = list(local[0][1].coefficients())
    modulus = local[0][0].p
    for d, shifted in local[1:]:
        coeffs = [
            crt_pair(c, modulus, s, d.p)
            for c, s in zip(coeffs, shifted.coefficients())
        ]
        modulus *= d.p
    if symmetric:
        coeffs = [c - modulus if 2 * c > modulus else c for c in coeffs]
    curve = WeierstrassCurve(*coeffs)
    point = Point(0, 0)
    if not curve.contains(point):
        raise VerificationError("(0,0) is not on the glued curve")
    records = []
    for d, shifted in local:
        reduced, _ = curve.reduce_mod_p(d.p)
        if reduced.coefficients() != shifted.coefficients():
            raise VerificationError(f"reduction mod {d.p} does not match the search hit")
        achieved_count = reduced.count_points()
        achieved_order = curve.point_order_mod_p(point, d.p)
        if achieved_count != d.group_order or achieved_order != d.n:
            raise VerificationError(
                f"mod {d.p}: got count {achieved_count}, order {achieved_order}"
            )
        records.append(
            {"p": d.p, "count": achieved_count, "order": achieved_order,
             "cofactor": d.k}
        )
    nontorsion = curve.is_nontorsion(point)
    if not nontorsion:
        raise VerificationError("glued base point is torsion")
    return ConstructionResult(curve, point, records, nontorsion)


def verify_construction(result):
    """Recompute everything claimed by a ConstructionResult.

    Returns a report with per-prime rank checks and whether the product of
    the prescribed moduli enters the index-divisibility set at its own
    index (the jump 1 -> d).
    """
    from .apparition import index_divisible, rank_prime
    from .eds import EdsContext

    ctx = EdsContext(result.curve, result.point)
    checks = []
    d_product = 1
    ok = True
    for rec in result.records:
        p = rec["p"]
        rank = rank_prime(ctx, p).rank
        good = result.curve.has_good_reduction(p)
        match = rank == rec["order"] and good
        ok = ok and match
        checks.append({"p": p, "rank": rank, "expected": rec["order"],
                       "good_reduction": good, "ok": match})
        d_product *= rank
    in_set = index_divisible(ctx, d_product, method="exact")
    return {
        "ranks": checks,
        "d": d_product,
        "d_in_set": in_set,
        "ok": ok and in_set,
    }


def parse_prescriptions(text):
    """Lines 'p n k' (blank lines and #-comments ignored)."""
    data = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise PreconditionError(f"line {lineno}: expected 'p n k', got {raw!r}")
        try:
            p, n, k = (int(x) for x in parts)
        except ValueError:
            raise PreconditionError(f"line {lineno}: non-integer field") from None
        data.append(PrescribedDatum(p, n, k))
    return data
