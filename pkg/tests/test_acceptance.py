"""One test per acceptance criterion; the terminal summary lists PASS/FAIL
for each of them."""

import random
from itertools import combinations_with_replacement

import numpy as np
import pytest

from raatc import graph as gr
from raatc.atlas import named_graphs
from raatc.cliques import clique_number, has_two_disjoint_maximum_cliques, z_r, z_r_oracle
from raatc.cohomology import verify_mixed_lower, zcl_pn, zd_power
from raatc.covering import compare_double
from raatc.fixtures import figure1, figure2, figure3
from raatc.planner import audit
from raatc.polyhedral import (Factor, boundary_simplex, discrete_complex, flag_complex,
                              full_simplex, graph_polyhedral_product, tc_polyprod)
from raatc.projective import ProjProfile, norm_upper, tc_bounds, tc_pn, wedge_tc
from raatc.tcpoly import (IntPolynomial, check_identities, series_expand, tc_polynomial,
                          tc_sequence)

from helpers import random_graph

P = IntPolynomial.parse


def all_fixture_graphs():
    return list(named_graphs().values())


def test_criterion_1_generating_function_atlas():
    for n in (2, 3, 4, 5):
        assert tc_polynomial(gr.edgeless(n)) == P("2x - x^2")
    for n in range(1, 7):
        assert tc_polynomial(gr.complete(n)) == IntPolynomial((0, n))
    for k, l in ((2, 1), (3, 2), (4, 4)):
        assert tc_polynomial(gr.disjoint_cliques(k, l)) == IntPolynomial((0, k + l, -l))
    for fig, base, cover in ((figure1, "3x - x^2", "4x - 2x^2"),
                             (figure2, "4x - x^2", "5x - 2x^2"),
                             (figure3, "7x - x^2 - x^3", "8x - 3x^2")):
        g, v = fig()
        assert tc_polynomial(g) == P(base)
        assert tc_polynomial(gr.double(g, v)) == P(cover)
    assert tc_polynomial(gr.o_n(3)) == P("5x - x^2 - x^3")


@pytest.mark.parametrize("n", range(2, 7))
def test_criterion_2_o_n_family(n):
    g = gr.o_n(n)
    for k in range(2, n):
        assert z_r(g, k) == (k - 1) * n + k
    assert z_r(g, n) == n * n
    for r in range(n, n + 3):
        assert z_r(g, r) == r * n
    assert tc_polynomial(g).degree == n


def test_criterion_3_oracle_equivalence():
    rng = random.Random(20261014)
    checked = 0
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 10), rng.uniform(0.2, 0.8))
        for r in (2, 3, 4):
            assert z_r(g, r) == z_r_oracle(g, r), (g.to_text(), r)
            checked += 1
    for g in all_fixture_graphs():
        if g.n <= 12:
            for r in (2, 3, 4):
                assert z_r(g, r) == z_r_oracle(g, r), (g.to_text(), r)
                checked += 1
    assert checked >= 600


def test_criterion_4_identities():
    for g in all_fixture_graphs():
        seq = tc_sequence(g)
        rep = check_identities(tc_polynomial(g), seq)
        assert rep.ok, (g.to_text(), rep.to_json())


def test_criterion_5_doubles():
    g, v = figure1()
    rep = compare_double(g, v, 5)
    assert rep.hyp_a.holds
    assert all(rep.cover[r] == rep.hyp_a.predicted_tc(r) for r in rep.r_values)
    assert all(rep.hyp_b[r] for r in rep.r_values)
    assert all(rep.relation[r] == ">" for r in rep.r_values)

    g, v = figure2()
    rep = compare_double(g, v, 5)
    assert all(rep.hyp_b[r] for r in range(2, 6))
    assert all(rep.relation[r] == ">" for r in rep.r_values)

    g, v = figure3()
    rep = compare_double(g, v, 4)
    assert [bool(rep.hyp_b[r]) for r in (2, 3, 4)] == [True, False, False]
    assert rep.relation == {2: ">", 3: "=", 4: "="}


def test_criterion_6_join_additivity():
    rng = random.Random(6)
    for _ in range(50):
        n1 = rng.randint(1, 9)
        n2 = rng.randint(1, 10 - n1)
        g1 = random_graph(rng, n1, rng.uniform(0.2, 0.8))
        g2 = random_graph(rng, n2, rng.uniform(0.2, 0.8))
        j = gr.join(g1, g2)
        assert j.n <= 10
        for r in (2, 3):
            assert z_r(j, r) == z_r(g1, r) + z_r(g2, r)


def _factor_graph(rng):
    k = rng.randint(1, 2)
    h = gr.disjoint_cliques(k, k)
    edges = h.edges()
    # extra cross edges are fine as long as they keep two disjoint maximum cliques
    for _ in range(rng.randint(0, 2)):
        cand = gr.Graph.from_edges(h.n, edges + [(rng.randrange(k), k + rng.randrange(k))])
        if clique_number(cand) == k and has_two_disjoint_maximum_cliques(cand):
            edges = cand.edges()
    return gr.Graph.from_edges(h.n, edges)


def test_criterion_7_polyhedral_consistency():
    rng = random.Random(7)
    done = 0
    while done < 20:
        m = rng.randint(1, 4)
        K = flag_complex(random_graph(rng, m, rng.uniform(0.2, 0.9)))
        gs = [_factor_graph(rng) for _ in range(m)]
        if sum(g.n for g in gs) > 10:
            continue
        assert all(has_two_disjoint_maximum_cliques(g) for g in gs)
        r = rng.randint(2, 4)
        est = tc_polyprod([Factor.from_graph(g) for g in gs], K, r)
        assert est.exact
        assert est.value == z_r(graph_polyhedral_product(gs, K), r)
        done += 1


def test_criterion_8_projective_bounds():
    tri = boundary_simplex(3)
    for dims, value in (((2, 2, 2), 7), ((4, 4, 4), 15)):
        b = tc_bounds(ProjProfile(dims), tri)
        assert b.sharp and b.lower == b.upper == value
    for n1, n2 in ((5, 3), (2, 2), (7, 7)):
        expected = max(n1 + n2, tc_pn(n1).value)
        assert wedge_tc((n1, n2)).value == expected
        assert norm_upper(ProjProfile((n1, n2)), discrete_complex(2)).value == expected


def test_criterion_9_cohomology():
    point = full_simplex(1)
    for n in range(1, 17):
        assert zd_power(1, zcl_pn(n), [n], point)
        assert not zd_power(1, zcl_pn(n) + 1, [n], point)
    cases = [((2, 2, 2), boundary_simplex(3)), ((4, 4, 4), boundary_simplex(3))]
    cases += [(d, discrete_complex(2)) for d in ((5, 3), (2, 2), (7, 7))]
    for dims, K in cases:
        for s1, s2 in combinations_with_replacement(K.faces(), 2):
            assert verify_mixed_lower(dims, K, s1, s2).ok


@pytest.mark.parametrize("K, dims", [
    (full_simplex(1), (1,)),
    (boundary_simplex(3), (1, 1, 1)),
    (full_simplex(2), (3, 3)),
    (full_simplex(1), (7,)),
], ids=["point-1", "boundary-111", "edge-33", "point-7"])
def test_criterion_10_motion_planner_audits(K, dims):
    rep = audit(K, dims, 2000, seed=2026)
    js = rep.to_json()
    for row in js["continuity"]:
        print(f"  {dims} delta={row['delta']:.0e} sup={row['max_sup_distance']:.3e} ratio={row['max_ratio']:.3f}")
    assert rep.max_endpoint_error <= 1e-9
    assert rep.path_points == 2000 * 256 and rep.membership_fraction == 1.0
    assert rep.max_total_zeros <= rep.norm
    assert rep.diagonal_failures == 0 and rep.label_failures == 0
    assert rep.separation_failures == 0 and rep.bound_failures == 0
    assert rep.continuity_trend
    assert all(np.isfinite(row["max_ratio"]) for row in js["continuity"])
    assert rep.passed, js["counterexamples"][:3]


def test_criterion_11_series_round_trip():
    for g in all_fixture_graphs():
        seq = tc_sequence(g)
        poly = tc_polynomial(g)
        order = poly.degree + 3
        assert series_expand(poly, order) == [seq.tc(r + 1) for r in range(order + 1)]
