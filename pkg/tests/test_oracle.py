import pytest

from llab import oracle
from llab.errors import InputError, ResourceError
from llab.exactmath import BivarPoly, binom_poly
from llab.oracle import (certify, certify_minor, certify_union, hf_linear_algebra,
                         hf_minor_combinatorial, hf_minor_linear_algebra, hf_union)
from llab.schemes import IdealGenerators, hilbert_minor, MinorScheme, make_union_spec


def test_combinatorial_examples():
    assert hf_minor_combinatorial(0, 0, 1, 1, 1) == 3
    assert hf_minor_combinatorial(2, 3, 1, 0, 0) == 1
    assert hf_minor_combinatorial(0, 1, 1, 2, 1) == 9


def test_linear_algebra_examples():
    diag = IdealGenerators((), ((0, 1),))
    assert hf_linear_algebra(diag, [0, 1], [0, 1], 1, 1) == 3
    assert hf_linear_algebra(IdealGenerators(), range(3), range(2), 2, 3) == 6 * 4
    assert hf_minor_linear_algebra(0, 1, 1, 1, 1) == 5


def test_union_examples():
    assert hf_union(make_union_spec(1, [0, 0]), 1, 1) == 3
    assert hf_union(make_union_spec(3, [1, 0]), 0, 0) == 1
    assert hf_union(make_union_spec(2, [0, 0]), 1, 2) == 7


def test_product_case_counts():
    # m = -1 is the product P^{q-1} x P^{p-1}
    assert hf_minor_combinatorial(2, 3, -1, 2, 1) == 6 * 2


def test_guard():
    with pytest.raises(ResourceError):
        hf_union(make_union_spec(9, [9]), 6, 6)
    with pytest.raises(InputError):
        hf_union(make_union_spec(1, [0, 0]), -1, 0)


def test_certify_examples():
    reps = certify_minor(1, 1, 1, 5)
    assert all(r.passed for r in reps)
    assert certify(binom_poly("s+t", 2, 2),
                   lambda s, t: hf_minor_combinatorial(0, 0, 2, s, t), 4).passed
    bad = hilbert_minor(MinorScheme(1, 1, 1)) + BivarPoly.const(1)
    rep = certify(bad, lambda s, t: hf_minor_combinatorial(1, 1, 1, s, t), 5, strict=False)
    assert rep.verdict == "FAIL" and rep.mismatches[0][:2] == (0, 0)
    assert rep.to_json()["mismatches"][0] == [0, 0, "2", 1]


def test_certify_strict_grid():
    poly = hilbert_minor(MinorScheme(3, 3, 3))
    with pytest.raises(InputError):
        certify(poly, lambda s, t: 0, 5)
    assert not certify_minor(3, 3, 3, 1)[0].determining


def test_certify_accepts_mapping():
    poly = binom_poly("s+t", 1, 1)
    grid = {(s, t): s + t + 1 for s in range(3) for t in range(3)}
    assert certify(poly, grid, 2).passed


def test_certify_union_small():
    assert certify_union(make_union_spec(2, [0, 0])).passed


@pytest.mark.parametrize("p, q, m", [(0, 0, 2), (1, 2, 1), (2, 0, 2), (1, 1, 0)])
def test_oracles_agree_and_monotone(p, q, m):
    grid = [[hf_minor_linear_algebra(p, q, m, s, t) for t in range(5)] for s in range(5)]
    for s in range(5):
        for t in range(5):
            assert grid[s][t] == hf_minor_combinatorial(p, q, m, s, t)
            if s:
                assert grid[s][t] >= grid[s - 1][t]
            if t:
                assert grid[s][t] >= grid[s][t - 1]


def test_report_json_shape():
    rep = certify_union(make_union_spec(1, [0, 0]), 2)
    doc = rep.to_json()
    assert set(doc) >= {"scheme", "grid", "verdict", "mismatches"}
    assert doc["verdict"] == "PASS"
    assert oracle.MONOMIAL_GUARD == 10 ** 5
