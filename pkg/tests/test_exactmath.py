import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from llab.errors import DimensionError, InterpolationError, InputError
from llab.exactmath import (BivarPoly, Mat, Subspace, binom_poly, interpolate_grid, inverse,
                            kernel_basis, rat, rat_str, rref, sparse_rank, subspace_ops)

small = st.integers(-4, 4)
fracs = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def matrices(draw, max_dim=4):
    r = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    rows = [[draw(fracs) for _ in range(c)] for _ in range(r)]
    return Mat.from_rows(rows, c)


@st.composite
def subspaces(draw, n):
    k = draw(st.integers(0, n))
    return Subspace.span([[draw(small) for _ in range(n)] for _ in range(k)], n)


def test_rat_roundtrip():
    assert rat("3/6") == Fraction(1, 2)
    assert rat_str(Fraction(4, 2)) == "2"
    assert rat_str(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(InputError):
        rat("x")


def test_rref_examples():
    I = Mat.identity(2)
    assert rref(I) == (I, 2)
    assert rref(Mat.from_rows([[1, 1], [2, 2]])) == (Mat.from_rows([[1, 1], [0, 0]]), 1)
    assert rref(Mat.from_rows([[0, 1], [1, 0]])) == (I, 2)


def test_kernel_examples():
    assert kernel_basis(Mat.from_rows([[1, 1]])) == Subspace.span([[1, -1]], 2)
    assert kernel_basis(Mat.identity(3)).dim == 0
    assert kernel_basis(Mat.zeros(2, 3)) == Subspace.full(3)


def test_subspace_ops_examples():
    e1, e2 = Subspace.span([[1, 0]], 2), Subspace.span([[0, 1]], 2)
    ops = subspace_ops(e1, e2)
    assert ops.intersection.dim == 0 and ops.direct_sum
    assert subspace_ops(e1, e1).contains
    diag = Subspace.span([[1, 1]], 2)
    assert subspace_ops(diag, Subspace.full(2)).intersection == diag
    with pytest.raises(DimensionError):
        subspace_ops(e1, Subspace.zero(3))


def test_inverse():
    M = Mat.from_rows([[2, 1], [1, 1]])
    assert M @ inverse(M) == Mat.identity(2)
    with pytest.raises(DimensionError):
        inverse(Mat.from_rows([[1, 1], [1, 1]]))


def test_sparse_rank_matches_dense():
    rows = [{0: 1, 2: 1}, {1: 1}, {0: 2, 1: 3, 2: 2}]
    assert sparse_rank(rows) == 2


@given(matrices())
def test_rref_idempotent_and_rank_nullity(M):
    R, rank = rref(M)
    assert rref(R)[0] == R
    assert M.cols == rank + kernel_basis(M).dim
    for v in kernel_basis(M).vectors:
        assert all(x == 0 for x in M.apply(v))


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(subspaces(n), subspaces(n))))
def test_grassmann_identity(pair):
    A, B = pair
    assert (A + B).dim + (A & B).dim == A.dim + B.dim
    assert A.contains(A & B) and B.contains(A & B)


def test_binom_poly_examples():
    assert binom_poly("s", 2, 2) == (BivarPoly.s() + BivarPoly.const(2)) * \
        (BivarPoly.s() + BivarPoly.const(1)) * Fraction(1, 2)
    assert binom_poly("s+t", 1, 1) == BivarPoly.s() + BivarPoly.t() + BivarPoly.const(1)
    assert binom_poly("t", 0, 0) == BivarPoly.const(1)


@given(st.sampled_from(["s", "t", "s+t"]), st.integers(-3, 6), st.integers(0, 5), st.integers(0, 8))
def test_binom_poly_values(var, a, k, n):
    poly = binom_poly(var, a, k)
    s, t = (n, 0) if var != "t" else (0, n)
    top = n + a
    expected = math.prod(range(top - k + 1, top + 1)) // math.factorial(k) if k else 1
    assert poly(s, t) == expected


def test_interpolation_examples():
    lin = BivarPoly.s() + BivarPoly.t() + BivarPoly.const(1)
    grid = {(s, t): lin(s, t) for s in range(3) for t in range(3)}
    assert interpolate_grid(grid, 1) == lin
    assert interpolate_grid({(s, t): 1 for s in range(2) for t in range(2)}, 0) == BivarPoly.const(1)
    b = binom_poly("s+t", 2, 2)
    assert interpolate_grid({(s, t): b(s, t) for s in range(4) for t in range(4)}, 2) == b


def test_interpolation_rejects_non_polynomial():
    grid = {(s, t): 2 ** (s + t) for s in range(4) for t in range(4)}
    with pytest.raises(InterpolationError):
        interpolate_grid(grid, 2)


@st.composite
def polys(draw, max_deg=6):
    terms = {}
    for _ in range(draw(st.integers(0, 6))):
        i = draw(st.integers(0, max_deg))
        j = draw(st.integers(0, max_deg - i))
        terms[(i, j)] = draw(fracs)
    return BivarPoly.from_dict(terms)


@settings(max_examples=40)
@given(polys())
def test_interpolation_roundtrip(poly):
    grid = {(s, t): poly(s, t) for s in range(7) for t in range(7)}
    assert interpolate_grid(grid, 6) == poly


@given(polys())
def test_poly_json_roundtrip_and_swap(poly):
    assert BivarPoly.from_json(poly.to_json()) == poly
    assert poly.swap().swap() == poly
    assert poly.to_json() == sorted(poly.to_json())
