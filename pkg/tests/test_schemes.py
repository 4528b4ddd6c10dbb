from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from llab.errors import InvalidSpecError, NoPredecessorError, WrongCaseError, InputError
from llab.exactmath import BivarPoly, binom_poly
from llab.schemes import (IdealGenerators, MinorScheme, all_union_specs, component_ideal,
                          component_schemes, consecutive_intersection, hilbert_minor,
                          hilbert_product, hilbert_scheme, hilbert_union,
                          hilbert_union_recursive, make_union_spec, union_spec_from_json)

S, T, ONE = BivarPoly.s(), BivarPoly.t(), BivarPoly.const(1)


def test_make_union_spec_examples():
    sp = make_union_spec(1, [0, 0])
    assert (sp.p_seq, sp.q_seq, sp.full) == ((0, 1), (1, 0), True)
    sp = make_union_spec(2, [2])
    assert (sp.p_seq, sp.q_seq, sp.full) == ((0,), (0,), True)
    sp = make_union_spec(2, [0, 0])
    assert (sp.p_seq, sp.q_seq, sp.full) == ((0, 1), (2, 1), False)


@pytest.mark.parametrize("r, mults", [(1, [1, 0]), (0, []), (-1, [0]), (2, [-1])])
def test_make_union_spec_rejects(r, mults):
    with pytest.raises(InvalidSpecError):
        make_union_spec(r, mults)


def test_union_spec_json():
    sp = make_union_spec(3, [1, 0])
    assert union_spec_from_json(sp.to_json()) == sp
    with pytest.raises(InvalidSpecError):
        union_spec_from_json({"r": 1})


def test_minor_scheme_coordinates_and_generators():
    sch = MinorScheme(1, 2, 1)
    assert list(sch.x_coords) == [1, 2, 3, 4]
    assert list(sch.y_coords) == [0, 1, 2]
    assert sch.ambient == (3, 2) and sch.dimension == 4
    assert sch.generators().minors == ((1, 2),)
    with pytest.raises(InputError):
        MinorScheme(0, 2, -1)
    with pytest.raises(InputError):
        IdealGenerators((), ((2, 1),))


def test_hilbert_minor_examples():
    for m in range(4):
        assert hilbert_minor(MinorScheme(0, 0, m)) == binom_poly("s+t", m, m)
    assert hilbert_minor(MinorScheme(2, 1, 0)) == binom_poly("s", 1, 1) * binom_poly("t", 2, 2)
    assert hilbert_minor(MinorScheme(0, 1, 1)) == \
        (S + ONE) * (S + T * 2 + BivarPoly.const(2)) * Fraction(1, 2)
    with pytest.raises(WrongCaseError):
        hilbert_minor(MinorScheme(1, 1, -1))
    assert hilbert_scheme(MinorScheme(2, 3, -1)) == hilbert_product(2, 1)


def test_hilbert_union_examples():
    assert hilbert_union(make_union_spec(1, [0, 0])) == S + T + ONE
    assert hilbert_union(make_union_spec(2, [0, 0])) == binom_poly("s", 2, 2) + (S + ONE) * T
    assert hilbert_union(make_union_spec(2, [0])) == binom_poly("s", 2, 2)


def test_component_schemes_examples():
    comps = component_schemes(make_union_spec(1, [0, 0]))
    assert [(c.p, c.q, c.m) for c, _ in comps] == [(0, 1, 0), (1, 0, 0)]
    assert [e.linear for _, e in comps] == [("y1",), ("x0",)]
    comps = component_schemes(make_union_spec(0, [0]))
    assert comps[0][0] == MinorScheme(0, 0, 0) and comps[0][1].linear == ()
    comps = component_schemes(make_union_spec(2, [1, 0]))
    assert [(c.p, c.q, c.m) for c, _ in comps] == [(0, 1, 1), (2, 0, 0)]
    assert [e.linear for _, e in comps] == [("y2",), ("x0", "x1")]
    assert component_ideal(make_union_spec(2, [1, 0]), 0).minors == ((0, 1),)


def test_consecutive_intersection_examples():
    li = consecutive_intersection(make_union_spec(1, [0, 0]), 1)
    assert li.vanishing == ("x0", "y1") and li.hilbert() == ONE
    assert consecutive_intersection(make_union_spec(2, [0, 0]), 1).hilbert() == S + ONE
    assert consecutive_intersection(make_union_spec(3, [1, 1]), 1).hilbert() == (S + ONE) * (T + ONE)
    with pytest.raises(NoPredecessorError):
        consecutive_intersection(make_union_spec(1, [0, 0]), 0)


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_minor_degree_and_symmetry(p, q, m):
    poly = hilbert_minor(MinorScheme(p, q, m))
    assert poly.total_degree() == m + p + q
    assert poly.swap() == hilbert_minor(MinorScheme(q, p, m))
    assert poly(0, 0) == 1


@pytest.mark.parametrize("r", range(6))
def test_union_identities(r):
    for spec in all_union_specs(r):
        poly = hilbert_union(spec)
        assert poly.total_degree() == r
        assert poly(0, 0) == 1
        assert hilbert_union_recursive(spec) == poly
        if spec.full:
            assert poly == binom_poly("s+t", r, r)


def test_inclusion_exclusion_step():
    spec = make_union_spec(4, [1, 0, 1])
    prefix = make_union_spec(4, [1, 0])
    last = component_schemes(spec)[-1][0]
    assert hilbert_union(spec) == hilbert_union(prefix) + hilbert_minor(last) - \
        consecutive_intersection(spec, 2).hilbert()
