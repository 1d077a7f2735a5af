import pytest

from edslab.apparition import rank_prime
from edslab.errors import PreconditionError
from edslab.lucas import (
    compare_smyth,
    exceptional_arrows,
    lucas_divset,
    lucas_terms,
    singular_eds_crosscheck,
    smyth_arrows,
)

FIB_100 = [1, 5, 12, 24, 25, 36, 48, 60, 72, 96]
L31_84 = [1, 5, 6, 12, 18, 24, 25, 30, 36, 48, 54, 55, 60, 72, 84]


def test_lucas_terms_fibonacci():
    assert lucas_terms(1, -1, 12) == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]


def test_lucas_terms_31():
    assert lucas_terms(3, 1, 10) == [1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765]


def test_divset_fibonacci():
    assert lucas_divset(1, -1, 100) == FIB_100


def test_divset_31():
    assert lucas_divset(3, 1, 84) == L31_84


def test_divset_trivial():
    assert lucas_divset(1, -1, 1) == [1]


def test_divisibility_sequence_law():
    for a, b in ((1, -1), (3, 1), (3, -1), (5, 1)):
        terms = lucas_terms(a, b, 200)
        for m in range(1, 201):
            for n in range(m, 201, m):
                assert terms[n - 1] % terms[m - 1] == 0, (a, b, m, n)


def test_exceptional_sets():
    assert exceptional_arrows(3, 1) == {1: 6}
    assert exceptional_arrows(3, -1) == {1: 6}
    assert exceptional_arrows(1, -1) == {1: 12}
    assert exceptional_arrows(5, -1) == {1: 12}
    assert exceptional_arrows(2, 1) == {}
    assert exceptional_arrows(4, 1) == {}


def test_smyth_arrows_vertex_one():
    pred = smyth_arrows(1, -1, 1, 100)
    assert pred.targets == [5, 12]
    pred31 = smyth_arrows(3, 1, 1, 100)
    assert pred31.targets == [5, 6]


def test_smyth_degenerate_rejected():
    with pytest.raises(PreconditionError):
        smyth_arrows(2, 1, 1, 50)


def test_compare_smyth_empty():
    for a, b in ((1, -1), (3, 1), (3, -1), (5, 1)):
        assert compare_smyth(a, b, 200) == [], (a, b)


def test_compare_smyth_detects_corruption():
    # sanity: a wrong prediction must produce a visible diff
    from edslab import lucas as module

    original = module.smyth_arrows

    def corrupted(a, b, n, bound):
        pred = original(a, b, n, bound)
        if n == 1:
            pred.targets = [t for t in pred.targets if t != 5]
        return pred

    module.smyth_arrows = corrupted
    try:
        diffs = module.compare_smyth(1, -1, 100)
    finally:
        module.smyth_arrows = original
    assert diffs and diffs[0]["vertex"] == 1 and 5 in diffs[0]["missing"]


def test_singular_crosscheck():
    assert singular_eds_crosscheck(100) == []


def test_nodal_equals_even_fibonacci():
    fib = lucas_terms(1, -1, 20)
    assert lucas_terms(3, 1, 10) == fib[1::2]


def test_nodal_ranks(ctx_nodal):
    assert rank_prime(ctx_nodal, 2).rank == 3
    assert rank_prime(ctx_nodal, 3).rank == 2
    assert rank_prime(ctx_nodal, 5).rank == 5


def test_nodal_divset_matches_lucas(ctx_nodal):
    from edslab.divgraph import enumerate_set

    assert enumerate_set(ctx_nodal, 84, method="exact").elements == L31_84
