"""Named reference checks reproducing published sequence data.

Each check returns (ok, detail).  The registry backs the verify-paper
CLI subcommand and the acceptance test suite; names are stable and
content-based so a --filter substring picks out related checks.
"""

from fractions import Fraction

from .apparition import (
    index_divisible,
    rank_composite,
    rank_prime,
    rank_prime_power,
    rank_scan,
    regularity,
)
from .construct import PrescribedDatum, crt_curve, verify_construction
from .curves import Point, WeierstrassCurve
from .divgraph import (
    Arrow,
    anomalous_primes,
    arrows,
    classify_arrow,
    enumerate_set,
    gd_graph,
    nonstandard_weight_floor,
)
from .eds import EdsContext
from .lucas import compare_smyth, exceptional_arrows, lucas_divset, lucas_terms, singular_eds_crosscheck

DISC37 = (WeierstrassCurve(0, 0, 1, -1, 0), Point(0, 0))
IRREGULAR2 = (WeierstrassCurve(1, 0, 0, -2, 1), Point(1, 0))
RESIDUE_CURVE = (WeierstrassCurve(2, 1, 1, 7, 4), Point(4, 7))
BIG_ARROW = (
    WeierstrassCurve(0, 1, 1, -1291874622406186, 17872226251073822113702),
    Point(20751503, 1073344),
)

DISC37_TERMS = [1, 1, 1, 1, 2, 1, 3, 5, 7, 4, 23, 29, 59, 129, 314, 65,
                1529, 3689, 8209, 16264, 83313]
DISC37_SET = [1, 40, 53, 63, 80, 127, 160, 189, 200, 320, 400, 441, 443]
DISC37_ANOMALOUS = [53, 127, 443]
BIG_WARD = [1, 2146689, 286883381041833542301,
            60768120452650698495048133538894517]
BIG_RANKS = {5: 7, 7: 11, 11: 17, 17: 25}
FIB_DIVSET_100 = [1, 5, 12, 24, 25, 36, 48, 60, 72, 96]
LUCAS31_DIVSET_84 = [1, 5, 6, 12, 18, 24, 25, 30, 36, 48, 54, 55, 60, 72, 84]
RESIDUES_54 = {2: 1, 3: 2, 5: 4, 6: 4, 10: 3, 15: 3, 30: 0}


def _ctx(pair, **kw):
    return EdsContext(pair[0], pair[1], **kw)


def check_terms_disc37():
    got = _ctx(DISC37).terms(21)
    return got == DISC37_TERMS, f"D_1..D_21 = {got}"


def check_large_terms_disc37():
    ctx = _ctx(DISC37)
    d40, d53 = ctx.term(40), ctx.term(53)
    ok = d40 == 40 * 13526278251270010 and d53 == 53 * 299741133691576877400370757471
    return ok, f"D_40/40 = {d40 // 40}, D_53/53 = {d53 // 53}"


def check_divset_disc37():
    got = enumerate_set(_ctx(DISC37), 500).elements
    return got == DISC37_SET, f"S(D) up to 500 = {got}"


def check_anomalous_disc37():
    got = anomalous_primes(DISC37[0], 500)
    return got == DISC37_ANOMALOUS, f"anomalous up to 500 = {got}"


def check_counts_disc37():
    got = [DISC37[0].count_points(p) for p in (2, 3, 5)]
    return got == [5, 7, 8], f"#E(F_2),#E(F_3),#E(F_5) = {got}"


def check_residues_nonstandard_30():
    ctx = _ctx(RESIDUE_CURVE)
    got = {n: ctx.term(n) % n for n in RESIDUES_54}
    if got != RESIDUES_54:
        return False, f"residues = {got}"
    cls = classify_arrow(ctx, Arrow(1, 30))
    ok = (cls.kind == "nonstandard" and cls.t == 1 and cls.p0 == 2
          and cls.lhs == Fraction(3))
    return ok, f"residues ok; (1->30) {cls.kind}, t={cls.t}, p0={cls.p0}, lhs={cls.lhs}"


def check_ranks_small_54():
    ctx = _ctx(RESIDUE_CURVE)
    got = {p: rank_prime(ctx, p).rank for p in (2, 3, 5)}
    counts = [RESIDUE_CURVE[0].count_points(p) for p in (2, 3, 5)]
    ok = got == {2: 3, 3: 5, 5: 6} and counts == [3, 5, 6]
    return ok, f"ranks = {got}, counts = {counts}"


def check_gd_graph_30():
    g = gd_graph(_ctx(RESIDUE_CURVE), 1, 30)
    ok = (g.connected and g.eq_identity_ok
          and set(g.arrows) == {(2, 3), (3, 5), (5, 2), (5, 3)}
          and all(v >= 1 for v in g.in_deg.values())
          and all(v >= 1 for v in g.out_deg.values()))
    return ok, f"arrows = {sorted(g.arrows)}, identity ok = {g.eq_identity_ok}"


def check_big_pipeline_32725():
    ctx = _ctx(BIG_ARROW)
    ward = ctx.ward_exact(4)
    if [abs(w) for w in ward] != BIG_WARD:
        return False, f"W_1..W_4 = {ward}"
    ranks = {p: rank_prime(ctx, p).rank for p in BIG_RANKS}
    if ranks != BIG_RANKS:
        return False, f"ranks = {ranks}"
    ok = index_divisible(ctx, 32725, method="exact")
    return ok, f"W-values and ranks match; 32725 | D_32725 = {ok}"


def check_formal_group_strict():
    ctx = _ctx(IRREGULAR2)
    rep = ctx.check_formal_group(2, 4, 2)
    if not (rep.lhs == 3 and rep.rhs == 2 and rep.strict and rep.exceptional):
        return False, f"strict case: {rep}"
    ctx37 = _ctx(DISC37)
    rep37 = ctx37.check_formal_group(2, 5, 2)
    ok = rep37.lhs == 2 and rep37.rhs == 2 and not rep37.strict
    return ok, f"strict {rep.lhs}>{rep.rhs}; non-strict {rep37.lhs}={rep37.rhs}"


def check_irregular_flags():
    rep = regularity(_ctx(IRREGULAR2))
    ok = rep.ir_flags == (True, True, True, True, True) and not rep.regular
    return ok, f"flags = {rep.ir_flags}, regular = {rep.regular}"


def check_rank_lifts_irregular():
    ctx = _ctx(IRREGULAR2)
    r2 = rank_prime(ctx, 2).rank
    r4 = rank_prime_power(ctx, 2, 2).rank
    r8 = rank_prime_power(ctx, 2, 3).rank
    s4 = rank_scan(ctx, 4, 40).rank
    s8 = rank_scan(ctx, 8, 40).rank
    ok = r2 == 4 and r4 == s4 == 8 and r8 == s8 == 8
    return ok, f"r_2={r2}, r_4={r4} (scan {s4}), r_8={r8} (scan {s8})"


def check_rank_composite_54():
    ctx = _ctx(RESIDUE_CURVE)
    r30 = rank_composite(ctx, 30).rank
    scan = rank_scan(ctx, 30, 40).rank
    return r30 == scan == 30, f"r_30 = {r30}, scan = {scan}"


def check_lucas_smyth():
    fib = lucas_divset(1, -1, 100)
    l31 = lucas_divset(3, 1, 84)
    if fib != FIB_DIVSET_100 or l31 != LUCAS31_DIVSET_84:
        return False, f"fib = {fib}, lucas31 = {l31}"
    d1 = compare_smyth(1, -1, 200)
    d2 = compare_smyth(3, 1, 200)
    b = exceptional_arrows(3, 1)
    ok = d1 == [] and d2 == [] and b == {1: 6}
    return ok, f"divsets ok; diffs = {d1}, {d2}; B(3,1) = {b}"


def check_nodal_cubic_fibonacci():
    bad = singular_eds_crosscheck(100)
    fib = lucas_terms(1, -1, 200)
    even = fib[1::2][:10]
    head = lucas_terms(3, 1, 10)
    ok = bad == [] and even == head
    return ok, f"mismatched indices: {bad}; head = {head}"


def check_weight_floor_row():
    nu, d = nonstandard_weight_floor(10)
    return (nu, d) == (2, 143), f"p_min 10: nu = {nu}, d floor = {d}"


def check_construct_32725():
    data = [PrescribedDatum(5, 7, 1), PrescribedDatum(7, 11, 1),
            PrescribedDatum(11, 17, 1), PrescribedDatum(17, 25, 1)]
    result = crt_curve(data)
    report = verify_construction(result)
    ok = report["ok"] and report["d"] == 32725 and report["d_in_set"]
    return ok, f"curve = {result.curve.coefficients()}, report ok = {report['ok']}"


CHECKS = {
    "terms-disc37": check_terms_disc37,
    "large-terms-disc37": check_large_terms_disc37,
    "divset-disc37": check_divset_disc37,
    "anomalous-disc37": check_anomalous_disc37,
    "counts-disc37": check_counts_disc37,
    "residues-nonstandard-30": check_residues_nonstandard_30,
    "ranks-small-54": check_ranks_small_54,
    "gd-graph-30": check_gd_graph_30,
    "big-pipeline-32725": check_big_pipeline_32725,
    "formal-group-strict": check_formal_group_strict,
    "irregular-flags": check_irregular_flags,
    "rank-lifts-irregular": check_rank_lifts_irregular,
    "rank-composite-30": check_rank_composite_54,
    "lucas-smyth": check_lucas_smyth,
    "nodal-cubic-fibonacci": check_nodal_cubic_fibonacci,
    "weight-floor-row": check_weight_floor_row,
    "construct-32725": check_construct_32725,
}


def run_checks(name_filter=None):
    """Run (a substring-filtered subset of) all checks.

    Returns a list of (name, ok, detail).
    """
    results = []
    for name, fn in CHECKS.items():
        if name_filter and name_filter not in name:
            continue
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append((name, ok, detail))
    return results
