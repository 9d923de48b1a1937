"""Motion planner for polyhedral products of P^1, P^3 and P^7.

The nonsingular map is f(x, y) = x * conj(y) in the complex numbers,
quaternions or octonions (Cayley-Dickson doubling). For a pair of lines
(A, B) the zero count is the number of leading coordinates of f(a, b) that
vanish; it is independent of the unit representatives and 0 on the diagonal,
because f(a, a) = (|a|^2, 0, ..., 0).

Each factor of a plan holds at A until 1/2 - d(A, *), rotates at constant
speed toward B along the geodesic picked out by the sign of the first nonzero
coordinate of f, arrives by 1/2 + d(B, *), then holds. Distances are line
angles divided by pi, so every factor has diameter 1/2.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .polyhedral import SimplicialComplex, parse_complex
from .projective import ProjProfile, norm_upper

DIMS = (1, 3, 7)
ZERO_TOL = 1e-9


class DegenerateError(ArithmeticError):
    pass


# division algebras

def conj(x: np.ndarray) -> np.ndarray:
    out = -np.asarray(x, dtype=float)
    out[..., 0] *= -1
    return out


def cd_mul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Cayley-Dickson product (a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))."""
    n = x.shape[-1]
    if n == 1:
        return x * y
    h = n // 2
    a, b = x[..., :h], x[..., h:]
    c, d = y[..., :h], y[..., h:]
    return np.concatenate([cd_mul(a, c) - cd_mul(conj(d), b),
                           cd_mul(d, a) + cd_mul(b, conj(c))], axis=-1)


@lru_cache(maxsize=None)
def division_mult(dim: int) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """The map (x, y) -> x * conj(y) on R^{dim+1}."""
    if dim not in DIMS:
        raise ValueError(f"no division algebra of dimension {dim + 1}")

    def f(x, y):
        x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
        if x.shape[-1] != dim + 1 or y.shape[-1] != dim + 1:
            raise ValueError(f"expected vectors of length {dim + 1}, got {x.shape[-1]} and {y.shape[-1]}")
        return cd_mul(x, conj(y))

    return f


def solve_right(a: np.ndarray, c: np.ndarray) -> np.ndarray:
    """The b with a * conj(b) = c, namely conj(conj(a) c) / |a|^2 (alternativity)."""
    return conj(cd_mul(conj(a), c)) / float(a @ a)


# points and configurations

def _canonical(v: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(v) > 1e-12)
    if nz.size and v[nz[0]] < 0:
        v = -v
    return v


@dataclass(frozen=True)
class ProjPoint:
    """A line in R^{dim+1}, stored as a unit vector whose first nonzero
    coordinate is positive."""

    dim: int
    vector: tuple[float, ...]

    def __post_init__(self):
        if self.dim not in DIMS:
            raise ValueError(f"dimension must be one of {DIMS}, got {self.dim}")
        v = np.asarray(self.vector, dtype=float)
        if v.shape != (self.dim + 1,):
            raise ValueError(f"P^{self.dim} needs {self.dim + 1} coordinates, got {v.shape}")
        if abs(np.linalg.norm(v) - 1) > 1e-12:
            raise ValueError(f"vector has norm {np.linalg.norm(v)}, use ProjPoint.of")
        object.__setattr__(self, "vector", tuple(float(t) for t in _canonical(v)))

    @classmethod
    def of(cls, vector: Sequence[float], dim: int | None = None) -> ProjPoint:
        v = np.asarray(vector, dtype=float)
        n = np.linalg.norm(v)
        if n == 0:
            raise ValueError("the zero vector spans no line")
        return cls(len(v) - 1 if dim is None else dim, tuple(v / n))

    @classmethod
    def base(cls, dim: int) -> ProjPoint:
        return cls(dim, (1.0,) + (0.0,) * dim)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vector)

    def is_base(self, tol: float = ZERO_TOL) -> bool:
        return line_distance(self.array, base_vector(self.dim)) <= tol


def base_vector(dim: int) -> np.ndarray:
    e = np.zeros(dim + 1)
    e[0] = 1.0
    return e


def line_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray | float:
    """Angle between the lines through a and b, divided by pi (in [0, 1/2]).
    Works row-wise on stacked unit vectors."""
    dot = np.sum(a * b, axis=-1)
    s = np.where(dot < 0, -1.0, 1.0)[..., None]
    minus = np.linalg.norm(a - s * b, axis=-1)
    plus = np.linalg.norm(a + s * b, axis=-1)
    return 2 * np.arctan2(minus, plus) / math.pi


@dataclass(frozen=True)
class Configuration:
    dims: tuple[int, ...]
    K: SimplicialComplex
    points: tuple[ProjPoint, ...]

    def __post_init__(self):
        if len(self.dims) != self.K.m or len(self.points) != self.K.m:
            raise ValueError("dims, complex and points disagree on the number of factors")
        for n, p in zip(self.dims, self.points):
            if p.dim != n:
                raise ValueError(f"point in P^{p.dim} given for a P^{n} factor")
        if not self.K.is_face(self.support()):
            raise ValueError(f"support {sorted(self.support())} is not a face")

    def support(self, tol: float = ZERO_TOL) -> frozenset[int]:
        return frozenset(i + 1 for i, p in enumerate(self.points) if not p.is_base(tol))

    @classmethod
    def base(cls, dims: Sequence[int], K: SimplicialComplex) -> Configuration:
        return cls(tuple(dims), K, tuple(ProjPoint.base(n) for n in dims))

    @classmethod
    def from_vectors(cls, dims: Sequence[int], K: SimplicialComplex,
                     vectors: Sequence[Sequence[float]]) -> Configuration:
        return cls(tuple(dims), K, tuple(ProjPoint.of(v, n) for v, n in zip(vectors, dims)))

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "complex": self.K.to_json(),
                "points": [list(p.vector) for p in self.points]}


def parse_configuration(text: str | dict) -> Configuration:
    data = json.loads(text) if isinstance(text, str) else text
    dims = [int(n) for n in data["dims"]]
    K = parse_complex(data["complex"])
    return Configuration.from_vectors(dims, K, data["points"])


# strata

def zero_count(a: ProjPoint | np.ndarray, b: ProjPoint | np.ndarray, tol: float = ZERO_TOL) -> int:
    a = a.array if isinstance(a, ProjPoint) else np.asarray(a, dtype=float)
    b = b.array if isinstance(b, ProjPoint) else np.asarray(b, dtype=float)
    f = division_mult(len(a) - 1)(a, b)
    nz = np.flatnonzero(np.abs(f) > tol)
    if not nz.size:
        raise DegenerateError(f"f(a, b) vanishes to tolerance {tol}: {f.tolist()}")
    return int(nz[0])


@dataclass(frozen=True)
class StratumLabel:
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_json(self) -> dict:
        return {"counts": list(self.counts), "total": self.total}


def _check_pair(c1: Configuration, c2: Configuration) -> None:
    if c1.dims != c2.dims or c1.K != c2.K:
        raise ValueError("configurations live in different polyhedral products")


def stratum(c1: Configuration, c2: Configuration, tol: float = ZERO_TOL) -> StratumLabel:
    _check_pair(c1, c2)
    return StratumLabel(tuple(zero_count(a, b, tol) for a, b in zip(c1.points, c2.points)))


# plans

@dataclass(frozen=True)
class FactorPath:
    start: np.ndarray
    target: np.ndarray   # representative of B with f_k(start, target) > 0
    tangent: np.ndarray  # unit vector in the rotation plane, orthogonal to start
    t_hold: float
    t_arrive: float
    span: float          # rotation angle in radians, pi * d(A, B)
    zeros: int
    sign: int

    @property
    def constant(self) -> bool:
        return self.span == 0.0

    def at(self, ts: np.ndarray) -> np.ndarray:
        ts = np.atleast_1d(np.asarray(ts, dtype=float))
        if self.constant:
            return np.tile(self.start, (ts.size, 1))
        frac = np.clip((ts - self.t_hold) / (self.t_arrive - self.t_hold), 0.0, 1.0)
        phi = (frac * self.span)[:, None]
        out = np.cos(phi) * self.start + np.sin(phi) * self.tangent
        out[ts >= self.t_arrive] = self.target
        return out

    def to_json(self) -> dict:
        return {"t_hold": self.t_hold, "t_arrive": self.t_arrive,
                "plane": [self.start.tolist(), self.tangent.tolist()],
                "start_angle": 0.0, "span": self.span, "orientation": self.sign,
                "zero_count": self.zeros}


@dataclass(frozen=True)
class PathSpec:
    dims: tuple[int, ...]
    K: SimplicialComplex
    factors: tuple[FactorPath, ...]
    label: StratumLabel

    def to_json(self) -> dict:
        return {"dims": list(self.dims), "stratum": self.label.to_json(),
                "factors": [f.to_json() for f in self.factors]}


def _plan_factor(a: np.ndarray, b: np.ndarray, tol: float) -> FactorPath:
    n = len(a) - 1
    star = base_vector(n)
    d1 = float(line_distance(a, star))
    d2 = float(line_distance(b, star))
    t_hold, t_arrive = 0.5 - d1, 0.5 + d2
    f = division_mult(n)(a, b)
    k = zero_count(a, b, tol)
    sign = 1 if f[k] > 0 else -1
    target = sign * b
    # for k = 0 the sign makes <a, target> positive; for k >= 1 a is orthogonal to b
    dot = float(a @ target)
    perp = target - dot * a
    width = float(np.linalg.norm(perp))
    span = math.atan2(width, dot)
    if span <= 1e-15 or t_arrive - t_hold <= 0:
        return FactorPath(a, a, np.zeros_like(a), t_hold, t_arrive, 0.0, k, sign)
    return FactorPath(a, target, perp / width, t_hold, t_arrive, span, k, sign)


def plan(c1: Configuration, c2: Configuration, K: SimplicialComplex | None = None,
         tol: float = ZERO_TOL) -> PathSpec:
    _check_pair(c1, c2)
    if K is not None and K != c1.K:
        raise ValueError("configurations were built on a different complex")
    factors = tuple(_plan_factor(p.array, q.array, tol) for p, q in zip(c1.points, c2.points))
    return PathSpec(c1.dims, c1.K, factors, StratumLabel(tuple(f.zeros for f in factors)))


def eval_many(p: PathSpec, ts: np.ndarray) -> list[np.ndarray]:
    """Positions of every factor at all times ``ts``: one (len(ts), n+1) array per factor."""
    ts = np.asarray(ts, dtype=float)
    if ts.size and (ts.min() < 0 or ts.max() > 1):
        raise ValueError("times must lie in [0, 1]")
    return [f.at(ts) for f in p.factors]


def eval_path(p: PathSpec, t: float) -> Configuration:
    if not 0 <= t <= 1:
        raise ValueError(f"t = {t} outside [0, 1]")
    rows = [pos[0] for pos in eval_many(p, np.array([t]))]
    return Configuration.from_vectors(p.dims, p.K, rows)


# sampling

def _sparse_unit(rng: np.random.Generator, size: int, lead: int) -> np.ndarray:
    """Random unit vector with exactly ``lead`` leading zeros and a few more scattered."""
    v = rng.standard_normal(size)
    v[:lead] = 0.0
    tail = np.arange(lead + 1, size)
    v[tail[rng.random(tail.size) < 0.25]] = 0.0
    if abs(v[lead]) < 0.05:
        v[lead] = 0.05 if v[lead] >= 0 else -0.05
    return v / np.linalg.norm(v)


def _random_face(rng: np.random.Generator, K: SimplicialComplex) -> frozenset[int]:
    if not K.facets:
        return frozenset()
    facet = sorted(K.facets[rng.integers(len(K.facets))])
    return frozenset(i for i in facet if rng.random() < 0.75)


def sample_pair(rng: np.random.Generator, dims: Sequence[int],
                K: SimplicialComplex) -> tuple[Configuration, Configuration]:
    """A random pair whose per-factor zero counts are drawn uniformly, so
    that every stratum gets visited."""
    s1, s2 = _random_face(rng, K), _random_face(rng, K)
    diagonal = rng.random() < 0.05
    av, bv = [], []
    for i, n in enumerate(dims, start=1):
        star = base_vector(n)
        k = int(rng.integers(n + 1))
        if i in s1 and (i in s2 or diagonal):
            a = _sparse_unit(rng, n + 1, int(rng.integers(n + 1)))
            b = a.copy() if diagonal else solve_right(a, _sparse_unit(rng, n + 1, k))
        elif i in s1:
            a, b = _sparse_unit(rng, n + 1, k), star
        elif i in s2 and not diagonal:
            a, b = star, _sparse_unit(rng, n + 1, k)
        else:
            a, b = star, star
        av.append(a)
        bv.append(b)
    return (Configuration.from_vectors(dims, K, av), Configuration.from_vectors(dims, K, bv))


def perturb_pair(rng: np.random.Generator, c1: Configuration, c2: Configuration,
                 delta: float, tol: float = ZERO_TOL) -> tuple[Configuration, Configuration]:
    """Move a pair by about ``delta`` without leaving its stratum: zero
    coordinates of a, b and f(a, b) stay zero and base points stay put."""

    def jiggle(v: np.ndarray) -> np.ndarray:
        mask = np.abs(v) > tol
        w = np.where(mask, v, 0.0) + delta * rng.standard_normal(v.size) * mask
        return w / np.linalg.norm(w)

    av, bv = [], []
    for p, q in zip(c1.points, c2.points):
        a, b = p.array, q.array
        a_star, b_star = p.is_base(tol), q.is_base(tol)
        if a_star and b_star:
            na, nb = a, b
        elif b_star:
            na, nb = jiggle(a), b
        elif a_star:
            na, nb = a, jiggle(b)
        else:
            c = division_mult(p.dim)(a, b)
            na = jiggle(a)
            nb = solve_right(na, jiggle(c))
        av.append(na)
        bv.append(nb)
    return (Configuration.from_vectors(c1.dims, c1.K, av), Configuration.from_vectors(c1.dims, c1.K, bv))


# audit

TIME_GRID = 256
DELTAS = (1e-2, 1e-3, 1e-4)


@dataclass
class AuditReport:
    dims: tuple[int, ...]
    samples: int
    seed: int
    norm: int
    max_total_zeros: int = 0
    max_endpoint_error: float = 0.0
    path_points: int = 0
    points_in_product: int = 0
    diagonal_failures: int = 0
    label_failures: int = 0
    bound_failures: int = 0
    separation_failures: int = 0
    strata: Counter = field(default_factory=Counter)
    margin_histogram: Counter = field(default_factory=Counter)
    separation_histogram: Counter = field(default_factory=Counter)
    continuity: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)

    @property
    def membership_fraction(self) -> float:
        return self.points_in_product / self.path_points if self.path_points else 1.0

    @property
    def continuity_trend(self) -> bool:
        sups = [row["max_sup_distance"] for row in self.continuity]
        ratios = [row["max_ratio"] for row in self.continuity]
        return (all(a > b for a, b in zip(sups, sups[1:]))
                and all(math.isfinite(r) for r in ratios))

    @property
    def passed(self) -> bool:
        return (self.max_endpoint_error <= 1e-9 and self.points_in_product == self.path_points
                and not (self.diagonal_failures or self.label_failures or self.bound_failures
                         or self.separation_failures)
                and self.max_total_zeros <= self.norm and self.continuity_trend)

    def merge(self, other: AuditReport) -> None:
        self.max_total_zeros = max(self.max_total_zeros, other.max_total_zeros)
        self.max_endpoint_error = max(self.max_endpoint_error, other.max_endpoint_error)
        for name in ("path_points", "points_in_product", "diagonal_failures", "label_failures",
                     "bound_failures", "separation_failures"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.strata.update(other.strata)
        self.margin_histogram.update(other.margin_histogram)
        self.separation_histogram.update(other.separation_histogram)
        self.counterexamples.extend(other.counterexamples)

    def to_json(self) -> dict:
        return {
            "dims": list(self.dims), "samples": self.samples, "seed": self.seed,
            "passed": self.passed,
            "norm": self.norm, "max_total_zero_count": self.max_total_zeros,
            "max_endpoint_error": self.max_endpoint_error,
            "path_points": self.path_points, "membership_fraction": self.membership_fraction,
            "diagonal_failures": self.diagonal_failures, "label_failures": self.label_failures,
            "bound_failures": self.bound_failures, "separation_failures": self.separation_failures,
            "strata": {",".join(map(str, k)): v for k, v in sorted(self.strata.items())},
            "margin_histogram_log10": {str(k): v for k, v in sorted(self.margin_histogram.items())},
            "separation_histogram_log10": {str(k): v for k, v in sorted(self.separation_histogram.items())},
            "continuity": self.continuity, "continuity_trend": self.continuity_trend,
            "counterexamples": self.counterexamples[:20],
        }


def _log_bin(x: float) -> int:
    return -400 if x <= 0 else math.floor(math.log10(x))


def _audit_one(c1: Configuration, c2: Configuration, norm: int, rep: AuditReport,
               tol: float, ts: np.ndarray) -> None:
    dump = {"from": c1.to_json()["points"], "to": c2.to_json()["points"]}

    # diagonal
    for c in (c1, c2):
        for p in c.points:
            if zero_count(p, p, tol) != 0:
                rep.diagonal_failures += 1
                rep.counterexamples.append({"check": "diagonal", "point": list(p.vector)})

    # (a) one label, whatever the representatives
    label = stratum(c1, c2, tol)
    flipped = tuple(zero_count(-p.array, q.array, tol) for p, q in zip(c1.points, c2.points))
    if flipped != label.counts or any(not 0 <= j <= n for j, n in zip(label.counts, c1.dims)):
        rep.label_failures += 1
        rep.counterexamples.append({"check": "label", **dump})
    rep.strata[label.counts] += 1

    # (b) zero count bounded by the norm
    rep.max_total_zeros = max(rep.max_total_zeros, label.total)
    if label.total > norm:
        rep.bound_failures += 1
        rep.counterexamples.append({"check": "bound", "label": label.to_json(), **dump})

    # (e) earlier coordinates vanish, the k-th does not
    for p, q, k in zip(c1.points, c2.points, label.counts):
        f = np.abs(division_mult(p.dim)(p.array, q.array))
        rep.margin_histogram[_log_bin(float(f[k]))] += 1
        if k:
            below = float(f[:k].max())
            rep.separation_histogram[_log_bin(below)] += 1
            if below > tol:
                rep.separation_failures += 1
                rep.counterexamples.append({"check": "separation", **dump})

    # orientation: negated representatives describe the same path
    pa = plan(c1, c2, tol=tol)
    alt = [_plan_factor(-p.array, -q.array, tol) for p, q in zip(c1.points, c2.points)]
    for f, g in zip(pa.factors, alt):
        if float(np.max(line_distance(f.at(ts), g.at(ts)))) > 1e-9:
            rep.label_failures += 1
            rep.counterexamples.append({"check": "orientation", **dump})
            break

    # endpoints and (c) membership
    pos = eval_many(pa, ts)
    for i, (p, q) in enumerate(zip(c1.points, c2.points)):
        err = max(float(line_distance(pos[i][0], p.array)), float(line_distance(pos[i][-1], q.array)))
        rep.max_endpoint_error = max(rep.max_endpoint_error, err)
    far = np.stack([line_distance(x, base_vector(x.shape[1] - 1)) > tol for x in pos], axis=1)
    masks = far.astype(np.int64) @ (1 << np.arange(far.shape[1], dtype=np.int64))
    rep.path_points += len(ts)
    for mask in np.unique(masks):
        face = frozenset(i + 1 for i in range(far.shape[1]) if int(mask) >> i & 1)
        hits = int(np.count_nonzero(masks == mask))
        if c1.K.is_face(face):
            rep.points_in_product += hits
        elif len(rep.counterexamples) < 50:
            t = float(ts[np.argmax(masks == mask)])
            rep.counterexamples.append({"check": "membership", "t": t, "support": sorted(face), **dump})


def _audit_chunk(args) -> AuditReport:
    dims, K_json, seeds, norm, tol = args
    K = parse_complex(K_json)
    rep = AuditReport(tuple(dims), 0, 0, norm)
    ts = np.linspace(0.0, 1.0, TIME_GRID)
    for s in seeds:
        rng = np.random.default_rng(s)
        c1, c2 = sample_pair(rng, dims, K)
        _audit_one(c1, c2, norm, rep, tol, ts)
    return rep


def continuity_probe(dims: Sequence[int], K: SimplicialComplex, seed: int, pairs: int = 64,
                     deltas: Sequence[float] = DELTAS, tol: float = ZERO_TOL) -> list[dict]:
    """For each delta: the largest sup-distance between the paths of a pair
    and of a same-stratum perturbation of it, and the largest ratio of that
    to the input distance."""
    root = np.random.SeedSequence([seed, 1])
    base_pairs = [sample_pair(np.random.default_rng(s), dims, K) for s in root.spawn(pairs)]
    ts = np.linspace(0.0, 1.0, TIME_GRID)
    rows = []
    for j, delta in enumerate(deltas):
        rng = np.random.default_rng(np.random.SeedSequence([seed, 2, j]))
        sup_max = ratio_max = 0.0
        used = skipped = 0
        for c1, c2 in base_pairs:
            d1, d2 = perturb_pair(rng, c1, c2, delta, tol)
            if stratum(c1, c2, tol) != stratum(d1, d2, tol):
                skipped += 1
                continue
            moved = max(max(float(line_distance(p.array, q.array)) for p, q in zip(c1.points, d1.points)),
                        max(float(line_distance(p.array, q.array)) for p, q in zip(c2.points, d2.points)))
            if moved == 0:
                continue
            pa, pb = eval_many(plan(c1, c2, tol=tol), ts), eval_many(plan(d1, d2, tol=tol), ts)
            sup = max(float(np.max(line_distance(x, y))) for x, y in zip(pa, pb))
            sup_max = max(sup_max, sup)
            ratio_max = max(ratio_max, sup / moved)
            used += 1
        rows.append({"delta": delta, "pairs": used, "skipped": skipped,
                     "max_sup_distance": sup_max, "max_ratio": ratio_max})
    return rows


def audit(K: SimplicialComplex, dims: Sequence[int], samples: int, seed: int,
          tol: float = ZERO_TOL, workers: int = 1, probe_pairs: int = 64) -> AuditReport:
    """Sample ``samples`` configuration pairs and check labels, the zero-count
    bound, endpoints, membership of every path point, stratum separation and
    a continuity probe. Per-sample seeds are spawned from ``seed``, so the
    report does not depend on ``workers``."""
    dims = tuple(int(n) for n in dims)
    if any(n not in DIMS for n in dims):
        raise ValueError(f"planner dimensions must be in {DIMS}, got {dims}")
    if len(dims) != K.m:
        raise ValueError(f"{len(dims)} dimensions for a complex on {K.m} vertices")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    norm = norm_upper(ProjProfile(dims), K).value
    seeds = np.random.SeedSequence(seed).spawn(samples)
    report = AuditReport(dims, samples, seed, norm)
    workers = max(1, min(workers, samples))
    step = -(-samples // workers)
    chunks = [(dims, K.to_json(), seeds[i:i + step], norm, tol) for i in range(0, samples, step)]
    if workers == 1:
        parts = map(_audit_chunk, chunks)
    else:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_audit_chunk, chunks))
    for part in parts:
        report.merge(part)
    report.continuity = continuity_probe(dims, K, seed, min(probe_pairs, samples), tol=tol)
    return report
