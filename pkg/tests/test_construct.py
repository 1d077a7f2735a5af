import pytest

from edslab.construct import (
    ConstructionResult,
    PrescribedDatum,
    crt_curve,
    parse_prescriptions,
    search_curve_mod_p,
    translate_point_to_origin,
    verify_construction,
)
from edslab.errors import NotFound, PreconditionError, VerificationError

EXAMPLE_DATA = [
    PrescribedDatum(5, 7, 1),
    PrescribedDatum(7, 11, 1),
    PrescribedDatum(11, 17, 1),
    PrescribedDatum(17, 25, 1),
]


def test_search_small_cases():
    curve, pt = search_curve_mod_p(5, 7, 7)
    assert curve.count_points() == 7
    curve2, pt2 = search_curve_mod_p(2, 3, 3)
    assert curve2.count_points() == 3
    assert not pt.is_identity and not pt2.is_identity


def test_search_determinism():
    a = search_curve_mod_p(11, 17, 17)
    b = search_curve_mod_p(11, 17, 17)
    assert a[0].coefficients() == b[0].coefficients()
    assert (a[1].x, a[1].y) == (b[1].x, b[1].y)


def test_search_hasse_violation():
    with pytest.raises(PreconditionError):
        search_curve_mod_p(5, 12, 12)


def test_search_order_must_divide():
    with pytest.raises(PreconditionError):
        search_curve_mod_p(5, 7, 3)


def test_hasse_feasibility_is_sufficient():
    # Deuring at desk scale: every in-range group order is hit for p >= 5
    import math

    for p in (5, 7, 11, 13):
        lo = p + 1 - 2 * math.isqrt(p)
        hi = p + 1 + 2 * math.isqrt(p)
        for order in range(lo, hi + 1):
            if order < 2 or (p + 1 - order) ** 2 >= 4 * p:
                continue
            q = next(d for d in range(2, order + 1) if order % d == 0)
            curve, pt = search_curve_mod_p(p, order, q)
            assert curve.count_points() == order
            assert not pt.is_identity


def test_translate_point():
    curve, pt = search_curve_mod_p(7, 11, 11)
    shifted, origin = translate_point_to_origin(curve, pt)
    assert (origin.x, origin.y) == (0, 0)
    assert shifted.contains(origin)
    assert shifted.count_points() == 11


def test_crt_curve_example():
    result = crt_curve(EXAMPLE_DATA)
    assert isinstance(result, ConstructionResult)
    assert result.nontorsion
    report = verify_construction(result)
    assert report["ok"] and report["d"] == 32725 and report["d_in_set"]


def test_crt_determinism():
    a = crt_curve(EXAMPLE_DATA)
    b = crt_curve(EXAMPLE_DATA)
    assert a.curve.coefficients() == b.curve.coefficients()


def test_crt_symmetric_mode():
    result = crt_curve(EXAMPLE_DATA, symmetric=True)
    modulus = 5 * 7 * 11 * 17
    assert all(-modulus // 2 <= c <= modulus // 2 for c in result.curve.coefficients())
    assert verify_construction(result)["ok"]


def test_single_datum():
    result = crt_curve([PrescribedDatum(5, 7, 1)])
    assert result.records[0]["order"] == 7
    report = verify_construction(result)
    assert report["ranks"][0]["rank"] == 7


def test_empty_data_rejected():
    with pytest.raises(PreconditionError):
        crt_curve([])


def test_duplicate_primes_rejected():
    with pytest.raises(PreconditionError):
        crt_curve([PrescribedDatum(5, 7, 1), PrescribedDatum(5, 4, 2)])


def test_wrong_expectation_detected():
    result = crt_curve([PrescribedDatum(5, 7, 1)])
    result.records[0]["order"] = 6  # tamper with the claimed point order
    report = verify_construction(result)
    assert not report["ok"]


def test_parse_prescriptions():
    data = parse_prescriptions("5 7 1\n\n# comment\n7 11 1\n")
    assert [(d.p, d.n, d.k) for d in data] == [(5, 7, 1), (7, 11, 1)]
    with pytest.raises(PreconditionError):
        parse_prescriptions("5 7\n")
    with pytest.raises(PreconditionError):
        parse_prescriptions("5 7 x\n")
