import pytest
from hypothesis import given, strategies as st

from raatc import graph as gr
from raatc.cohomology import zcl_pn
from raatc.polyhedral import (SimplicialComplex, boundary_simplex, discrete_complex,
                              flag_complex, full_simplex)
from raatc.projective import (ProjProfile, higher_tc_even, norm_upper, parse_proj_profile,
                              tc_bounds, tc_pn, wedge_tc, zcl_lower)

from helpers import graphs


def test_zcl_pn():
    assert zcl_pn(1) == 1 and zcl_pn(6) == 7
    for e in range(6):
        assert zcl_pn(2 ** e) == 2 ** (e + 1) - 1
    with pytest.raises(ValueError):
        zcl_pn(0)


def test_tc_pn_examples():
    assert tc_pn(3).value == 3
    assert tc_pn(4).value == 7
    est = tc_pn(11)
    assert not est.exact and (est.lower, est.upper) == (15, 22)
    assert tc_pn(11, {11: 17}).value == 17
    with pytest.raises(ValueError):
        tc_pn(11, {11: 30})


def test_exactness_set_agrees_with_zcl():
    listed = {1, 3, 7, 6} | {2 ** e for e in range(1, 6)} | {2 ** e + 1 for e in range(1, 6)}
    for n in range(1, 34):
        est = tc_pn(n)
        assert est.exact == (n in listed)
        if est.exact:
            assert est.value == zcl_pn(n)


def test_profile_validation():
    with pytest.raises(ValueError):
        ProjProfile((0, 2))
    with pytest.raises(ValueError):
        ProjProfile((11,), {11: 14})
    p = parse_proj_profile('{"dims": [11, 2], "tc_table": {"11": 17}}')
    assert p.tc_table == {11: 17}


def test_norm_examples():
    tri = boundary_simplex(3)
    nb = norm_upper(ProjProfile((2, 2, 2)), tri)
    assert nb.value == 7 and nb.exact
    assert nb.high.witness_json() == [[1, 2], [1, 3]]
    dims = (2, 5, 3)
    assert norm_upper(ProjProfile(dims), full_simplex(3)).value == sum(tc_pn(n).value for n in dims)
    for n1, n2 in ((5, 3), (9, 2), (3, 3)):
        val = norm_upper(ProjProfile((n1, n2)), discrete_complex(2)).value
        assert val == max(n1 + n2, tc_pn(n1).value)


def test_norm_with_unknown_dimension():
    nb = norm_upper(ProjProfile((11,)), full_simplex(1))
    assert not nb.exact and (nb.low.value, nb.high.value) == (15, 22)


def test_zcl_lower_examples():
    assert zcl_lower(ProjProfile((2, 2, 2)), boundary_simplex(3)).value == 7
    for n in (1, 2, 5, 8):
        assert zcl_lower(ProjProfile((n,)), full_simplex(1)).value == zcl_pn(n)
    assert zcl_lower(ProjProfile((5, 3)), discrete_complex(2)).value == 8


def test_bounds_examples():
    tri = boundary_simplex(3)
    b = tc_bounds(ProjProfile((1, 3, 7)), tri)
    # TC = n for every factor, so the norm is the sum over s1 | s2 = {1, 2, 3}
    assert b.sharp and b.lower == b.upper == 1 + 3 + 7
    for e in (1, 2, 3):
        n = 2 ** e
        b = tc_bounds(ProjProfile((n, n, n)), tri)
        assert b.sharp and b.lower == 2 ** (e + 2) - 1
    b = tc_bounds(ProjProfile((11, 2, 2)), tri)
    assert not b.sharp and b.lower < b.upper and not b.tc_equals_zcl


def test_mixed_increase_is_strict():
    tri = boundary_simplex(3)
    profile = ProjProfile((2, 2, 2))
    best_facet = max(sum(tc_pn(profile.dims[i - 1]).value for i in f) for f in tri.facets)
    assert norm_upper(profile, tri).value > best_facet


def test_wedge():
    assert wedge_tc((3, 5)).value == 8
    assert wedge_tc((2, 2)).value == 4
    assert wedge_tc((7, 7)).value == 14
    assert wedge_tc((8, 1)).value == 15
    assert wedge_tc((4,)).value == 7
    with pytest.raises(ValueError):
        wedge_tc(())


def test_higher_even():
    res = higher_tc_even(ProjProfile((2, 2, 2)), boundary_simplex(3), 10)
    assert res.value == 40 and "large enough r" in res.caveat
    assert higher_tc_even(ProjProfile((6,)), full_simplex(1), 4).value == 24
    assert higher_tc_even(ProjProfile((2, 4)), full_simplex(2), 5).value == 30
    with pytest.raises(ValueError):
        higher_tc_even(ProjProfile((2, 3)), full_simplex(2), 5)


@st.composite
def proj_instances(draw):
    m = draw(st.integers(1, 5))
    K = flag_complex(draw(graphs(min_n=m, max_n=m)))
    if draw(st.booleans()) and m >= 3:
        K = boundary_simplex(m)
    dims = tuple(draw(st.lists(st.integers(1, 8), min_size=m, max_size=m)))
    return ProjProfile(dims), K


@given(proj_instances())
def test_lower_below_upper(inst):
    profile, K = inst
    low = zcl_lower(profile, K)
    up = norm_upper(profile, K)
    assert low.value <= up.low.value <= up.high.value
    best_facet = max(sum(tc_pn(profile.dims[i - 1]).upper for i in f) for f in K.facets)
    assert up.high.value >= best_facet
    b = tc_bounds(profile, K)
    assert b.lower <= b.upper and (not b.sharp or b.lower == b.upper)
    if b.tc_equals_zcl:
        assert b.sharp


@given(proj_instances())
def test_facet_search_matches_all_faces(inst):
    profile, K = inst
    if len(K.faces()) > 40:
        return
    assert norm_upper(profile, K, all_faces=True).value == norm_upper(profile, K).value
    assert zcl_lower(profile, K, all_faces=True).value == zcl_lower(profile, K).value
