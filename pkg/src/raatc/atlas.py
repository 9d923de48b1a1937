"""Every published number the toolkit reproduces, recomputed in one place.

``compute_atlas`` rebuilds the atlas from scratch and ``diff_atlas`` compares
it against the stored goldens; ``raatc fixtures`` wraps both.
"""

from __future__ import annotations

from typing import Any

from . import graph as gr
from .cliques import solve_z, z_r
from .cohomology import zcl_pn, zd_power
from .covering import compare_double
from .fixtures import BOUNDARY_TRIANGLE, figure1, figure2, figure3
from .polyhedral import (Factor, boundary_simplex, cat_polyprod, discrete_complex,
                         full_simplex, parse_complex, tc_lower, tc_polyprod)
from .projective import ProjProfile, tc_bounds, tc_pn, wedge_tc, zcl_lower
from .tcpoly import check_identities, tc_polynomial, tc_sequence


def named_graphs() -> dict[str, gr.Graph]:
    out = {f"edgeless_{n}": gr.edgeless(n) for n in (2, 3, 4)}
    out.update({f"K_{n}": gr.complete(n) for n in range(1, 7)})
    out.update({f"disjoint_cliques_{k}_{l}": gr.disjoint_cliques(k, l)
                for k, l in ((2, 1), (3, 2), (4, 4))})
    for name, fig in (("figure1", figure1), ("figure2", figure2), ("figure3", figure3)):
        g, v = fig()
        out[name] = g
        out[name + "_double"] = gr.double(g, v)
    out.update({f"O_{n}": gr.o_n(n) for n in range(2, 7)})
    return out


def _poly_entry(g: gr.Graph) -> dict:
    seq = tc_sequence(g)
    P = tc_polynomial(g)
    return {"P": str(P), "K": seq.K, "e": seq.e,
            "TC": [seq.tc(r) for r in range(2, seq.horizon + 1)],
            "identities": check_identities(P, seq).ok}


def compute_atlas() -> dict[str, Any]:
    atlas: dict[str, Any] = {}
    atlas["polynomials"] = {name: _poly_entry(g) for name, g in named_graphs().items()}
    atlas["O_n_z"] = {str(n): [z_r(gr.o_n(n), r) for r in range(2, n + 3)] for n in range(2, 7)}
    w = solve_z(gr.o_n(3), 3)
    atlas["z3_O3"] = {"z": w.total, "witness": w.vertex_lists()}

    doubles = {}
    for name, fig, r_max in (("figure1", figure1, 5), ("figure2", figure2, 5), ("figure3", figure3, 4)):
        g, v = fig()
        rep = compare_double(g, v, r_max).to_json()
        doubles[name] = {k: rep[k] for k in ("TC_base", "TC_cover", "relation_cover_vs_base",
                                             "hypothesis_a", "hypothesis_b_certificates",
                                             "P_base", "P_cover", "degree_change")}
    atlas["doubles"] = doubles

    tri = parse_complex(BOUNDARY_TRIANGLE)
    circle = Factor.from_graph(gr.complete(1))
    two = Factor.from_graph(gr.disjoint_cliques(1, 1))
    atlas["polyhedral"] = {
        "cat_circles_boundary": cat_polyprod([circle] * 3, tri).upper,
        "tc2_two_points_factors_boundary": tc_polyprod([two] * 3, tri, 2).value,
        "tc_lower_circles_boundary_r2": tc_lower([circle] * 3, tri, 2)[0],
        "wedge_tori_4_2": {str(r): tc_lower([Factor.from_graph(gr.complete(4)),
                                             Factor.from_graph(gr.complete(2))],
                                            discrete_complex(2), r)[0] for r in (2, 3, 4)},
    }

    proj: dict[str, Any] = {}
    for dims in ((2, 2, 2), (4, 4, 4), (1, 1, 1)):
        proj["boundary_" + "_".join(map(str, dims))] = tc_bounds(ProjProfile(dims), tri).to_json()
    for dims in ((5, 3), (2, 2), (7, 7)):
        proj["wedge_" + "_".join(map(str, dims))] = wedge_tc(dims).to_json()
    proj["zcl_lower_two_points_5_3"] = zcl_lower(ProjProfile((5, 3)), discrete_complex(2)).value
    proj["tc_pn"] = {str(n): tc_pn(n).to_json() for n in range(1, 17)}
    atlas["projective"] = proj

    point = full_simplex(1)
    atlas["zcl_threshold"] = {
        str(n): max(p for p in range(2 * n + 2) if zd_power(1, p, [n], point)) for n in range(1, 17)}
    atlas["zcl_formula"] = {str(n): zcl_pn(n) for n in range(1, 17)}
    atlas["boundary_complex"] = boundary_simplex(3).to_json()
    return atlas


def diff_atlas(computed: Any, golden: Any, path: str = "") -> list[str]:
    """Paths at which two JSON trees differ."""
    if isinstance(computed, dict) and isinstance(golden, dict):
        out = []
        for k in sorted(set(computed) | set(golden)):
            sub = f"{path}/{k}"
            if k not in golden:
                out.append(f"{sub}: not in goldens")
            elif k not in computed:
                out.append(f"{sub}: missing from computation")
            else:
                out += diff_atlas(computed[k], golden[k], sub)
        return out
    if isinstance(computed, (list, tuple)) and isinstance(golden, (list, tuple)):
        if len(computed) != len(golden):
            return [f"{path}: length {len(computed)} != {len(golden)}"]
        return [d for i, (a, b) in enumerate(zip(computed, golden)) for d in diff_atlas(a, b, f"{path}[{i}]")]
    if computed != golden or type(computed) is not type(golden):
        return [f"{path}: {computed!r} != {golden!r}"]
    return []
