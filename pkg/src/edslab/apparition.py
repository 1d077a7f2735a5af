"""Ranks of apparition r_n and regularity classification.

r_n is the least r with n | D_r.  For primes it is the order of the
reduced point; for prime powers it is lifted through the valuation
growth law; for composites it is the lcm over the prime-power parts.
"""

from dataclasses import dataclass
from math import lcm

from .errors import FactorizationFailure, PreconditionError, SingularReduction
from .numutil import factorize

FIELD_ORDER = "field_order"
FORMAL_LIFT = "formal_lift"
EXACT_SCAN = "exact_scan"


@dataclass
class RankRecord:
    modulus: int
    rank: int
    method: str
    certificate: dict


@dataclass
class RegularityReport:
    ir_flags: tuple  # (good at 2, #E(F_2)=4, r_2=4, D_2 odd, ord_2(D_4)=1)
    two_regular: bool
    nonsingular_at_bad: dict
    regular: bool


def _rank_cache(ctx):
    if not hasattr(ctx, "_rank_cache"):
        ctx._rank_cache = {}
    return ctx._rank_cache


def rank_prime(ctx, p):
    """r_p via the order of the reduced point in E_ns(F_p)."""
    cache = _rank_cache(ctx)
    if p in cache:
        return cache[p]
    if ctx.term(1) % p == 0:
        rec = RankRecord(p, 1, FIELD_ORDER, {"divides_first_term": True})
    else:
        order = ctx.curve.point_order_mod_p(ctx.point, p)  # raises SingularReduction
        rec = RankRecord(p, order, FIELD_ORDER, {"group_exponent_divisor": order})
    cache[p] = rec
    return rec


def rank_prime_power(ctx, p, e):
    """r_{p^e} lifted from r_p through the valuation growth law."""
    base = rank_prime(ctx, p)
    if e == 1:
        return base
    r1 = base.rank
    v = ctx.term_valuation(r1, p)
    cert = {"r_p": r1, "v": v}
    if e <= v:
        return RankRecord(p**e, r1, FORMAL_LIFT, cert)
    exceptional = p == 2 and v == 1 and ctx.ordinary_or_multiplicative_at_2()
    if exceptional:
        # one step of index doubling escapes the exceptional case
        w = ctx.term_valuation(2 * r1, 2)
        cert["v_after_doubling"] = w
        if e <= w:
            rank = 2 * r1
        else:
            rank = 2 * r1 * 2 ** (e - w)
    else:
        rank = r1 * p ** (e - v)
    return RankRecord(p**e, rank, FORMAL_LIFT, cert)


def rank_composite(ctx, n):
    """r_n = lcm of r_{p^e} over the prime powers of n."""
    if n == 1:
        return RankRecord(1, 1, EXACT_SCAN, {})
    factors = factorize(n)  # may raise FactorizationFailure
    if len(factors) == 1 and factors[0][1] == 1:
        return rank_prime(ctx, n)
    parts = {}
    rank = 1
    for p, e in factors:
        rec = rank_prime_power(ctx, p, e)
        parts[p**e] = rec.rank
        rank = lcm(rank, rec.rank)
    return RankRecord(n, rank, FORMAL_LIFT, {"prime_power_ranks": parts})


def rank_scan(ctx, n, limit):
    """Independent oracle: first index m <= limit with n | D_m, by exact terms."""
    for m in range(1, limit + 1):
        if ctx.term(m) % n == 0:
            return RankRecord(n, m, EXACT_SCAN, {"scanned_to": m})
    raise PreconditionError(f"no index <= {limit} with {n} | D_m")


def regularity(ctx):
    """Evaluate the five order-2 irregularity conditions and bad-prime flags."""
    if hasattr(ctx, "_regularity"):
        return ctx._regularity
    curve = ctx.curve
    ir1 = not curve.is_singular and curve.disc % 2 != 0
    ir2 = ir1 and curve.count_points(2) == 4
    try:
        ir3 = rank_prime(ctx, 2).rank == 4
    except SingularReduction:
        ir3 = False
    ir4 = ctx.term(2) % 2 == 1
    ir5 = ctx.term_valuation(4, 2) == 1
    flags = (ir1, ir2, ir3, ir4, ir5)
    two_regular = not all(flags)
    if curve.is_singular:
        raise PreconditionError("regularity is defined for nonsingular curves only")
    bad = {}
    for p, _ in factorize(abs(curve.disc)):  # may raise FactorizationFailure
        bad[p] = curve.is_nonsingular_at(ctx.point, p)
    report = RegularityReport(flags, two_regular, bad, two_regular and all(bad.values()))
    ctx._regularity = report
    return report


def is_regular(ctx):
    """Regularity, or None when it cannot be settled at trial-division scale."""
    try:
        return regularity(ctx).regular
    except (FactorizationFailure, PreconditionError):
        return None


def index_divisible(ctx, n, method="auto"):
    """Whether n | D_n.

    'fast' uses the regular-sequence criterion (every p | n has r_p | n);
    'exact' tests each prime power of n against the sequence directly.
    'auto' picks 'fast' only when the context is provably regular.
    """
    if n == 1:
        return True
    if method == "auto":
        method = "fast" if is_regular(ctx) else "exact"
    factors = factorize(n)
    if method == "fast":
        return all(rank_prime(ctx, p).rank and n % rank_prime(ctx, p).rank == 0
                   for p, _ in factors)
    if method != "exact":
        raise PreconditionError(f"unknown method {method!r}")
    for p, e in factors:
        if ctx.integral_point and ctx.curve.disc % p != 0:
            if ctx.ward_mod(n, p**e) != 0:
                return False
            continue
        try:
            rec = rank_prime_power(ctx, p, e)
        except SingularReduction:
            if ctx.term_valuation(n, p) < e:  # exact; may hit the term cap
                return False
            continue
        if n % rec.rank != 0:
            return False
    return True
