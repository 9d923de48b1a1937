"""Simplicial complexes on [m] and cat / TC_r estimates for polyhedral products
X^K built from based spaces (X_i, *).

Exactness is never inferred: every factor carries caller-asserted flags,
and formulas that need a flag report a bound instead of a value when it is
missing. Factors given as graphs (Eilenberg-Mac Lane spaces of RAA groups)
get their flags set automatically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from . import graph as gr
from .cliques import (clique_number, has_two_disjoint_maximum_cliques,
                      maximal_cliques, z_r)
from .errors import InconsistencyError, MissingHypothesisError
from .graph import Graph, bits


class ComplexError(ValueError):
    pass


Face = frozenset


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on vertices 1..m given by its facets (sorted, containment-free)."""

    m: int
    facets: tuple[frozenset[int], ...]
    allow_empty: bool = False
    allow_ghosts: bool = False

    def __post_init__(self):
        facets = {frozenset(f) for f in self.facets}
        for f in facets:
            bad = [v for v in f if not 1 <= v <= self.m]
            if bad:
                raise ComplexError(f"vertices {sorted(bad)} out of range 1..{self.m}")
        reduced = [f for f in facets if f and not any(f < h for h in facets)]
        if not reduced and not self.allow_empty:
            raise ComplexError("empty facet list (pass allow_empty to build the empty complex)")
        reduced.sort(key=lambda f: (sorted(f), len(f)))
        object.__setattr__(self, "facets", tuple(reduced))
        ghosts = set(range(1, self.m + 1)) - self.vertices
        if ghosts and not self.allow_ghosts:
            raise ComplexError(f"ghost vertices {sorted(ghosts)} (pass allow_ghosts to permit)")

    @classmethod
    def from_facets(cls, m: int, facets: Iterable[Iterable[int]], **flags) -> SimplicialComplex:
        return cls(m, tuple(frozenset(f) for f in facets), **flags)

    @property
    def vertices(self) -> set[int]:
        return set().union(*self.facets) if self.facets else set()

    @property
    def dimension(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_face(self, s: Iterable[int]) -> bool:
        s = frozenset(s)
        return not s or any(s <= f for f in self.facets)

    def faces(self) -> list[frozenset[int]]:
        """Every face, the empty one included, ordered by size then vertices."""
        out = {frozenset()}
        for f in self.facets:
            fs = sorted(f)
            for k in range(1, len(fs) + 1):
                out.update(frozenset(c) for c in combinations(fs, k))
        return sorted(out, key=lambda s: (len(s), sorted(s)))

    def to_json(self) -> dict:
        return {"m": self.m, "facets": [sorted(f) for f in self.facets]}

    def __str__(self):
        return json.dumps(self.to_json())


def full_simplex(m: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets(m, [range(1, m + 1)])


def discrete_complex(m: int) -> SimplicialComplex:
    """m isolated points; the polyhedral product is the wedge."""
    return SimplicialComplex.from_facets(m, [[i] for i in range(1, m + 1)])


def boundary_simplex(m: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets(m, combinations(range(1, m + 1), m - 1))


def parse_complex(text: str | dict) -> SimplicialComplex:
    data = json.loads(text) if isinstance(text, str) else text
    try:
        m = int(data["m"])
        facets = [[int(v) for v in f] for f in data["facets"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise ComplexError(f"bad complex JSON: {exc}") from None
    return SimplicialComplex.from_facets(
        m, facets, allow_empty=bool(data.get("allow_empty", False)),
        allow_ghosts=bool(data.get("allow_ghosts", False)))


def flag_complex(g: Graph) -> SimplicialComplex:
    """Faces are the cliques of ``g``; graph vertex v becomes complex vertex v + 1."""
    facets = [[v + 1 for v in bits(c)] for c in maximal_cliques(g)]
    return SimplicialComplex.from_facets(g.n, facets, allow_empty=g.n == 0)


# factors

@dataclass(frozen=True)
class Factor:
    """One based space X_i, described by its cat and some TC_r values.

    The three flags are assertions about the family the factor belongs to:
    ``ls_logarithmic`` (cat of products of distinct factors, and of powers,
    is additive), ``tc_r_logarithmic`` (same for TC_r) and
    ``tc_equals_r_cat`` (TC_r(X_i) = r cat(X_i)). ``provenance`` records
    who asserted them and why.
    """

    cat: int
    tc: Mapping[int, int] = field(default_factory=dict)
    ls_logarithmic: bool = False
    tc_r_logarithmic: bool = False
    tc_equals_r_cat: bool = False
    provenance: str = ""
    graph: Graph | None = None

    def tc_r(self, r: int) -> int:
        if self.graph is not None:
            return z_r(self.graph, r)
        if r not in self.tc:
            raise KeyError(f"TC_{r} not supplied for factor ({self.provenance or 'no provenance'})")
        return self.tc[r]

    @classmethod
    def from_graph(cls, g: Graph) -> Factor:
        two = has_two_disjoint_maximum_cliques(g)
        return cls(
            cat=clique_number(g), ls_logarithmic=True, tc_r_logarithmic=True,
            tc_equals_r_cat=two, graph=g,
            provenance="RAA factor: cat and TC_r additive under graph joins"
                       + ("; two disjoint maximum cliques give TC_r = r cat" if two else ""),
        )

    def to_json(self) -> dict:
        if self.graph is not None:
            return {"graph": self.graph.to_json()}
        return {"cat": self.cat, "tc": {str(r): v for r, v in sorted(self.tc.items())},
                "ls_logarithmic": self.ls_logarithmic, "tc_r_logarithmic": self.tc_r_logarithmic,
                "tc_equals_r_cat": self.tc_equals_r_cat, "provenance": self.provenance}


def factor_from_json(data: dict) -> Factor:
    if not isinstance(data, dict):
        raise ValueError(f"factor must be a JSON object, got {data!r}")
    if "graph" in data:
        g = data["graph"]
        return Factor.from_graph(gr.load_graph(g) if isinstance(g, str) else gr.graph_from_json(g))
    return Factor(
        cat=int(data["cat"]),
        tc={int(r): int(v) for r, v in data.get("tc", {}).items()},
        ls_logarithmic=bool(data.get("ls_logarithmic", False)),
        tc_r_logarithmic=bool(data.get("tc_r_logarithmic", False)),
        tc_equals_r_cat=bool(data.get("tc_equals_r_cat", False)),
        provenance=str(data.get("provenance", "")),
    )


def parse_profile(text: str | list | dict) -> list[Factor]:
    data = json.loads(text) if isinstance(text, str) else text
    if isinstance(data, dict):
        data = data["factors"]
    return [factor_from_json(d) for d in data]


@dataclass(frozen=True)
class Estimate:
    """An exact value (lower == upper, ``exact``) or a bracket."""

    lower: int
    upper: int
    exact: bool
    witness: Mapping = field(default_factory=dict)
    note: str = ""

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError(f"only a bracket [{self.lower}, {self.upper}] is known")
        return self.upper

    def to_json(self) -> dict:
        d = {"lower": self.lower, "upper": self.upper, "exact": self.exact,
             "witness": {k: (sorted(v) if isinstance(v, frozenset) else v) for k, v in self.witness.items()}}
        if self.exact:
            d["value"] = self.upper
        if self.note:
            d["note"] = self.note
        return d


def _check_profile(factors: Sequence[Factor], K: SimplicialComplex) -> None:
    if len(factors) != K.m:
        raise ValueError(f"{len(factors)} factors for a complex on {K.m} vertices")


def _facet_sum(values: Sequence[int], face: Iterable[int]) -> int:
    return sum(values[i - 1] for i in face)


def _best_facet(values: Sequence[int], K: SimplicialComplex) -> tuple[int, frozenset[int]]:
    best, arg = 0, frozenset()
    for f in K.facets:
        s = _facet_sum(values, f)
        if s > best:
            best, arg = s, f
    return best, arg


def cat_polyprod(factors: Sequence[Factor], K: SimplicialComplex) -> Estimate:
    """max over facets of the summed cat; exact for LS-logarithmic families,
    an upper bound otherwise."""
    _check_profile(factors, K)
    cats = [f.cat for f in factors]
    best, facet = _best_facet(cats, K)
    if all(f.ls_logarithmic for f in factors):
        return Estimate(best, best, True, {"facet": facet})
    # each X_i is a retract of X^K
    lower = max((cats[i - 1] for i in K.vertices), default=0)
    return Estimate(lower, best, False, {"facet": facet}, "LS-logarithmicity not asserted")


def tc_lower(factors: Sequence[Factor], K: SimplicialComplex, r: int) -> tuple[int, dict]:
    """Lower bound for TC_r(X^K) from retracts and from r-tuples of faces
    containing a disjoint pair. Needs LS-logarithmicity."""
    _check_profile(factors, K)
    if r < 2:
        raise ValueError("r must be >= 2")
    if not all(f.ls_logarithmic for f in factors):
        raise MissingHypothesisError("tc_lower needs every factor flagged ls_logarithmic")
    cats = [f.cat for f in factors]

    # (a) the subproduct over a facet is a retract
    best_a, wit_a = -1, frozenset()
    for facet in K.facets:
        if all(factors[i - 1].tc_r_logarithmic for i in facet):
            s = sum(factors[i - 1].tc_r(r) for i in facet)
        else:
            # without TC_r-logarithmicity: cat((X^s)^(r-1)) and the single factors
            s = max([(r - 1) * _facet_sum(cats, facet)]
                    + [factors[i - 1].tc_r(r) for i in facet if factors[i - 1].tc])
        if s > best_a:
            best_a, wit_a = s, facet

    # (b) sigma_1, sigma_2 disjoint, the rest free: sigma_1 a facet, sigma_2 a
    # largest face missing sigma_1, the remaining r-2 slots on the best facet
    best_facet_cat, top = _best_facet(cats, K)
    best_b, wit_b = -1, ()
    for s1 in K.facets:
        for t in K.facets:
            s2 = t - s1
            if not s2:
                continue
            val = _facet_sum(cats, s1) + _facet_sum(cats, s2) + (r - 2) * best_facet_cat
            if val > best_b:
                best_b, wit_b = val, (s1, s2)

    if best_b > best_a:
        tup = [sorted(wit_b[0]), sorted(wit_b[1])] + [sorted(top)] * (r - 2)
        return best_b, {"kind": "disjoint-pair tuple", "faces": tup}
    return best_a, {"kind": "retract facet", "facet": sorted(wit_a)}


def tc_polyprod(factors: Sequence[Factor], K: SimplicialComplex, r: int) -> Estimate:
    _check_profile(factors, K)
    if r < 2:
        raise ValueError("r must be >= 2")
    cats = [f.cat for f in factors]
    best_cat, cat_facet = _best_facet(cats, K)
    upper = r * best_cat
    hypotheses = all(f.ls_logarithmic and f.tc_r_logarithmic and f.tc_equals_r_cat for f in factors)
    if hypotheses:
        tcs = [f.tc_r(r) for f in factors]
        value, facet = _best_facet(tcs, K)
        if value != upper:
            raise InconsistencyError(
                f"max facet TC_r sum {value} differs from r * cat = {upper}; check the factor flags")
        return Estimate(value, value, True, {"facet": facet})
    if all(f.ls_logarithmic for f in factors):
        lower, wit = tc_lower(factors, K, r)
    else:
        lower = max((factors[i - 1].tc_r(r) for i in K.vertices), default=0)
        wit = {"kind": "single-factor retract"}
    # even a closed bracket is not reported as exact without the asserted flags
    return Estimate(lower, upper, False,
                    {"lower": wit, "upper_facet": sorted(cat_facet)},
                    "hypotheses for the exact formula not all asserted")


def join_all(graphs: Sequence[Graph]) -> Graph:
    out = Graph.from_edges(0, [])
    for g in graphs:
        out = gr.join(out, g)
    return out


def join_tc(graphs: Sequence[Graph], r: int, verify_up_to: int = 12) -> int:
    """TC_r of a graph join as the sum over the pieces; when the join is
    small it is also computed directly and the two must match."""
    if r < 2:
        raise ValueError("r must be >= 2")
    total = sum(z_r(g, r) for g in graphs)
    if sum(g.n for g in graphs) <= verify_up_to:
        direct = z_r(join_all(graphs), r)
        if direct != total:
            raise InconsistencyError(f"join TC_{r}: sum {total} != direct {direct}")
    return total


def graph_polyhedral_product(graphs: Sequence[Graph], K: SimplicialComplex) -> Graph:
    """Disjoint union of the factor graphs with every cross edge between
    factors i, j such that {i, j} is a face of K.

    For a flag complex K the RAA group of this graph is the fundamental group
    of the polyhedral product of the K(H_i, 1); for non-flag K it is not.
    """
    if len(graphs) != K.m:
        raise ValueError(f"{len(graphs)} graphs for a complex on {K.m} vertices")
    offsets = []
    n = 0
    for g in graphs:
        offsets.append(n)
        n += g.n
    edges = []
    for i, g in enumerate(graphs):
        edges += [(u + offsets[i], v + offsets[i]) for u, v in g.edges()]
    for i, j in combinations(range(K.m), 2):
        if K.is_face({i + 1, j + 1}):
            edges += [(u + offsets[i], w + offsets[j])
                      for u in range(graphs[i].n) for w in range(graphs[j].n)]
    return Graph.from_edges(n, edges)


def is_flag(K: SimplicialComplex) -> bool:
    skeleton = Graph.from_edges(
        K.m, [(a - 1, b - 1) for f in K.facets for a, b in combinations(sorted(f), 2)])
    return flag_complex(skeleton).facets == K.facets if K.vertices == set(range(1, K.m + 1)) else False
