import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from raatc.planner import (Configuration, _plan_factor, DegenerateError, ProjPoint, audit, base_vector,
                           cd_mul, continuity_probe, division_mult, eval_many, eval_path,
                           line_distance, parse_configuration, perturb_pair, plan,
                           sample_pair, solve_right, stratum, zero_count)
from raatc.polyhedral import boundary_simplex, discrete_complex, full_simplex

POINT = full_simplex(1)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def test_division_examples():
    assert np.allclose(division_mult(1)([1, 0], [0, 1]), [0, -1])
    assert np.allclose(division_mult(3)([0, 1, 0, 0], [0, 0, 1, 0]), [0, 0, 0, -1])
    for dim in (1, 3, 7):
        x = unit(np.arange(1, dim + 2))
        assert np.allclose(division_mult(dim)(x, x), base_vector(dim))
    with pytest.raises(ValueError):
        division_mult(2)
    with pytest.raises(ValueError):
        division_mult(3)([1, 0], [1, 0, 0, 0])


def test_quaternion_table():
    i, j, k = np.eye(4)[1:]
    assert np.allclose(cd_mul(i, j), k)
    assert np.allclose(cd_mul(j, k), i)
    assert np.allclose(cd_mul(i, i), -np.eye(4)[0])


vectors8 = st.lists(st.floats(-3, 3, allow_nan=False), min_size=8, max_size=8)


@given(vectors8, vectors8, st.sampled_from([1, 3, 7]))
def test_norm_multiplicative_and_nonsingular(x, y, dim):
    x, y = np.array(x[:dim + 1]), np.array(y[:dim + 1])
    f = division_mult(dim)(x, y)
    assert math.isclose(np.linalg.norm(f), np.linalg.norm(x) * np.linalg.norm(y), rel_tol=1e-9, abs_tol=1e-9)
    # bilinear
    assert np.allclose(division_mult(dim)(2 * x, -y), -2 * f)


@given(vectors8, vectors8)
def test_solve_right(a, c):
    a, c = np.array(a), np.array(c)
    if np.linalg.norm(a) < 1e-3:
        return
    b = solve_right(a, c)
    assert np.allclose(division_mult(7)(a, b), c, atol=1e-9)


def test_projpoint():
    p = ProjPoint.of([0, -3, 0, 4])
    assert p.vector == (0.0, 0.6, 0.0, -0.8)
    with pytest.raises(ValueError):
        ProjPoint(1, (1.0, 1.0))
    with pytest.raises(ValueError):
        ProjPoint.of([0, 0])
    assert ProjPoint.base(3).is_base()


def test_projpoint_rejects_dimension_two():
    with pytest.raises(ValueError):
        ProjPoint.of([0, -3, 4])


def test_line_distance():
    e0, e1 = np.eye(2)
    assert line_distance(e0, e1) == pytest.approx(0.5)
    assert line_distance(e0, -e0) == 0
    assert line_distance(e0, unit([1, 1])) == pytest.approx(0.25)


def test_zero_count_examples():
    a = ProjPoint.of([1, 0])
    assert zero_count(a, a) == 0
    assert zero_count(ProjPoint.of([1, 0]), ProjPoint.of([0, 1])) == 1
    p = ProjPoint.of([0, 0, 1, 1])
    assert zero_count(p, ProjPoint.base(3)) == 2
    with pytest.raises(DegenerateError):
        zero_count(np.zeros(2), np.array([1.0, 0.0]))


@pytest.mark.parametrize("dim", [1, 3, 7])
def test_diagonal_zero_count(dim):
    rng = np.random.default_rng(dim)
    for v in rng.standard_normal((10_000, dim + 1)):
        assert zero_count(v / np.linalg.norm(v), v / np.linalg.norm(v)) == 0


def config(dims, K, vectors):
    return Configuration.from_vectors(dims, K, vectors)


def test_configuration_support():
    K = boundary_simplex(3)
    c = config((1, 1, 1), K, [[0, 1], [1, 1], [1, 0]])
    assert c.support() == {1, 2}
    with pytest.raises(ValueError, match="not a face"):
        config((1, 1, 1), K, [[0, 1], [1, 1], [1, 2]])
    with pytest.raises(ValueError):
        config((3, 1, 1), K, [[0, 1], [1, 1], [1, 0]])
    back = parse_configuration(c.to_json())
    assert back.dims == c.dims and back.K == c.K
    assert all(np.allclose(p.vector, q.vector, atol=1e-15) for p, q in zip(back.points, c.points))


def test_stratum_examples():
    K = boundary_simplex(3)
    c = config((1, 1, 1), K, [[0, 1], [1, 1], [1, 0]])
    assert stratum(c, c).counts == (0, 0, 0)
    base = Configuration.base((1, 1, 1), K)
    assert stratum(base, base).total == 0
    d = config((1, 1, 1), K, [[1, 0], [1, 0], [0, 1]])
    lab = stratum(c, d)
    assert lab.counts == (1, 0, 1) and lab.total <= 3


def test_plan_from_base():
    c1 = Configuration.base((1,), POINT)
    c2 = config((1,), POINT, [[1, 1]])
    p = plan(c1, c2)
    f = p.factors[0]
    assert f.t_hold == 0.5 and f.t_arrive == pytest.approx(0.75)
    for t in (0.0, 0.25, 0.5):
        assert eval_path(p, t).points[0].is_base()
    assert line_distance(eval_path(p, 1.0).points[0].array, c2.points[0].array) < 1e-12


def test_plan_to_base():
    c1 = config((3,), POINT, [[0, 1, 0, 0]])
    c2 = Configuration.base((3,), POINT)
    p = plan(c1, c2)
    assert p.factors[0].t_hold == pytest.approx(0.0)
    for t in (0.5, 0.75, 1.0):
        assert eval_path(p, t).points[0].is_base()
    assert not eval_path(p, 0.25).points[0].is_base()


def test_constant_plan():
    K = full_simplex(2)
    c = config((3, 7), K, [[1, 2, 3, 4], list(range(1, 9))])
    p = plan(c, c)
    assert all(f.constant for f in p.factors)
    mid = eval_path(p, 0.5)
    assert all(line_distance(a.array, b.array) < 1e-12 for a, b in zip(mid.points, c.points))


def test_eval_errors():
    c = Configuration.base((1,), POINT)
    p = plan(c, c)
    with pytest.raises(ValueError):
        eval_path(p, 1.5)
    with pytest.raises(ValueError):
        eval_many(p, np.array([-0.1]))
    with pytest.raises(ValueError):
        plan(c, Configuration.base((3,), POINT))


def test_path_json():
    c1 = config((1,), POINT, [[1, 2]])
    c2 = config((1,), POINT, [[2, -1]])
    js = plan(c1, c2).to_json()
    f = js["factors"][0]
    assert f["span"] == pytest.approx(math.pi / 2) and f["zero_count"] == 1
    assert js["stratum"]["total"] == 1


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1), st.sampled_from([
    ((1,), POINT), ((1, 1, 1), boundary_simplex(3)), ((3, 3), full_simplex(2)),
    ((7,), POINT), ((1, 3), discrete_complex(2)),
]))
def test_plan_properties(seed, case):
    dims, K = case
    rng = np.random.default_rng(seed)
    c1, c2 = sample_pair(rng, dims, K)
    p = plan(c1, c2)
    ts = np.linspace(0, 1, 65)
    pos = eval_many(p, ts)
    for i, f in enumerate(p.factors):
        a, b = c1.points[i].array, c2.points[i].array
        # section property
        assert line_distance(pos[i][0], a) < 1e-9 and line_distance(pos[i][-1], b) < 1e-9
        # timing discipline
        d1 = line_distance(a, base_vector(dims[i]))
        d2 = line_distance(b, base_vector(dims[i]))
        early = ts <= 0.5 - d1
        late = ts >= 0.5 + d2
        assert np.all(line_distance(pos[i][early], a) < 1e-9)
        assert np.all(line_distance(pos[i][late], b) < 1e-9)
        # angular span is pi times the distance
        assert f.span == pytest.approx(math.pi * line_distance(a, b), abs=1e-9)
        # the opposite representatives give the same path
        g = _plan_factor(-a, -b, 1e-9)
        assert np.all(line_distance(f.at(ts), g.at(ts)) < 1e-9)
    # membership
    for j in range(len(ts)):
        face = {i + 1 for i in range(len(dims)) if line_distance(pos[i][j], base_vector(dims[i])) > 1e-9}
        assert K.is_face(face)


def test_perturbation_stays_in_stratum():
    rng = np.random.default_rng(3)
    K = boundary_simplex(3)
    for _ in range(50):
        c1, c2 = sample_pair(rng, (1, 1, 1), K)
        d1, d2 = perturb_pair(rng, c1, c2, 1e-3)
        assert stratum(c1, c2) == stratum(d1, d2)


def test_continuity_probe_shape():
    rows = continuity_probe((1, 1, 1), boundary_simplex(3), seed=5, pairs=16)
    assert [r["delta"] for r in rows] == [1e-2, 1e-3, 1e-4]
    assert rows[0]["max_sup_distance"] > rows[-1]["max_sup_distance"]


def test_audit_small_and_reproducible():
    r1 = audit(boundary_simplex(3), (1, 1, 1), 60, seed=11)
    assert r1.passed and r1.max_total_zeros <= r1.norm == 3
    r2 = audit(boundary_simplex(3), (1, 1, 1), 60, seed=11, workers=2)
    a, b = r1.to_json(), r2.to_json()
    assert a == b
    assert sum(r1.strata.values()) == 60


def test_audit_rejects_bad_input():
    with pytest.raises(ValueError):
        audit(POINT, (2,), 10, 0)
    with pytest.raises(ValueError):
        audit(POINT, (1, 1), 10, 0)
    with pytest.raises(ValueError):
        audit(POINT, (1,), 0, 0)
