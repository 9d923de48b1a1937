"""Graph doubles D_v(G) and the comparison of TC_r between a double and its base.

The RAA group of D_v(G) is a subgroup of that of G, so the two Salvetti
complexes form a covering; this module only deals with the combinatorics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cliques import all_cliques, clique_number, maximal_cliques, popcount, z_r
from .errors import InconsistencyError
from .graph import Graph, bits, double, star
from .tcpoly import IntPolynomial, poly_from_sequence, tc_sequence


@dataclass(frozen=True)
class HypothesisA:
    holds: bool
    clique_number: int

    def predicted_tc(self, r: int) -> int | None:
        return r * self.clique_number if self.holds else None

    @property
    def predicted_poly(self) -> IntPolynomial | None:
        c = self.clique_number
        return IntPolynomial((0, 2 * c, -c)) if self.holds else None


def hypothesis_a(g: Graph, v: int) -> HypothesisA:
    """Does St(v) avoid every clique of maximum size?"""
    st = star(g, v)
    c = clique_number(g)
    holds = all(m & st == 0 for m in maximal_cliques(g) if popcount(m) == c)
    return HypothesisA(holds, c)


@dataclass(frozen=True)
class Certificate:
    c1: int
    c2: int

    def to_json(self) -> dict:
        return {"C1": bits(self.c1), "C2": bits(self.c2)}


def hypothesis_b(g: Graph, v: int, r: int) -> list[Certificate]:
    """All clique pairs (C1, C2) with |C1| >= |C2|, (r-1)|C1| + |C2| > TC_r(G)
    and C1 & C2 & St(v) empty. Any such pair forces TC_r(D_v G) > TC_r(G)."""
    if r < 2:
        raise ValueError("r must be >= 2")
    st = star(g, v)
    target = z_r(g, r)
    cliques = [c for c in all_cliques(g) if c]
    by_size: dict[int, list[int]] = {}
    for c in cliques:
        by_size.setdefault(popcount(c), []).append(c)
    top = max(by_size, default=0)
    out = []
    for c2 in cliques:
        s2 = popcount(c2)
        # smallest |C1| with (r-1)|C1| + s2 > target
        need = max(s2, -(-(target - s2 + 1) // (r - 1)))
        for s1 in range(need, top + 1):
            for c1 in by_size.get(s1, ()):
                if c1 & c2 & st == 0:
                    out.append(Certificate(c1, c2))
    out.sort(key=lambda cert: (-popcount(cert.c1), bits(cert.c1), -popcount(cert.c2), bits(cert.c2)))
    return out


def _relation(cover: int, base: int) -> str:
    return ">" if cover > base else "<" if cover < base else "="


@dataclass
class DoubleReport:
    v: int
    r_values: list[int]
    base: dict[int, int]
    cover: dict[int, int]
    relation: dict[int, str]
    hyp_a: HypothesisA
    hyp_b: dict[int, list[Certificate]]
    base_poly: IntPolynomial
    cover_poly: IntPolynomial
    cover_graph: Graph = field(repr=False)

    @property
    def degree_change(self) -> str:
        return _relation(self.cover_poly.degree, self.base_poly.degree)

    def to_json(self) -> dict:
        return {
            "v": self.v,
            "cover_graph": self.cover_graph.to_text(),
            "TC_base": {str(r): self.base[r] for r in self.r_values},
            "TC_cover": {str(r): self.cover[r] for r in self.r_values},
            "relation_cover_vs_base": {str(r): self.relation[r] for r in self.r_values},
            "hypothesis_a": self.hyp_a.holds,
            "hypothesis_a_predicted_TC": ({str(r): self.hyp_a.predicted_tc(r) for r in self.r_values}
                                          if self.hyp_a.holds else None),
            "hypothesis_a_predicted_P": (str(self.hyp_a.predicted_poly) if self.hyp_a.holds else None),
            "hypothesis_b_certificates": {str(r): len(self.hyp_b[r]) for r in self.r_values},
            "hypothesis_b_first": {str(r): self.hyp_b[r][0].to_json()
                                   for r in self.r_values if self.hyp_b[r]},
            "P_base": str(self.base_poly),
            "P_cover": str(self.cover_poly),
            "P_base_coeffs": self.base_poly.to_json(),
            "P_cover_coeffs": self.cover_poly.to_json(),
            "degree_change": self.degree_change,
        }


def compare_double(g: Graph, v: int, r_max: int | None = None) -> DoubleReport:
    d = double(g, v)
    if r_max is None:
        r_max = d.n + 2
    if r_max > d.n + 2:
        raise ValueError(f"r_max={r_max} exceeds |V(D)|+2 = {d.n + 2}")
    if r_max < 2:
        raise ValueError("r_max must be >= 2")
    rs = list(range(2, r_max + 1))
    base = {r: z_r(g, r) for r in rs}
    cover = {r: z_r(d, r) for r in rs}
    hyp_a = hypothesis_a(g, v)
    hyp_b = {r: hypothesis_b(g, v, r) for r in rs}
    for r in rs:
        if hyp_a.holds and cover[r] != hyp_a.predicted_tc(r):
            raise InconsistencyError(f"hypothesis A holds but TC_{r}(D) = {cover[r]} != {hyp_a.predicted_tc(r)}")
        if hyp_b[r] and not cover[r] > base[r]:
            raise InconsistencyError(f"hypothesis B certificate at r={r} but TC_r(D) <= TC_r(G)")
    return DoubleReport(
        v=v, r_values=rs, base=base, cover=cover,
        relation={r: _relation(cover[r], base[r]) for r in rs},
        hyp_a=hyp_a, hyp_b=hyp_b,
        base_poly=poly_from_sequence(tc_sequence(g)),
        cover_poly=poly_from_sequence(tc_sequence(d)),
        cover_graph=d,
    )
