"""Simplicial graphs stored as adjacency bitsets, plus the constructions used
throughout the package: stars, doubles, joins and a few named families."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence


class GraphParseError(ValueError):
    pass


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in ascending order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """A loopless undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the bitset of neighbours of ``v``. Instances are immutable;
    build them with :meth:`from_edges` rather than by hand.
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, nb in enumerate(self.adj):
            if nb & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if nb >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(nb):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length does not match vertex count")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]],
                   labels: Sequence[str] | None = None) -> Graph:
        if n < 0:
            raise ValueError("negative vertex count")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise ValueError(f"loop edge {u}-{v}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), tuple(labels) if labels is not None else None)

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    @property
    def n_edges(self) -> int:
        return sum(bin(a).count("1") for a in self.adj) // 2

    def is_clique(self, mask: int) -> bool:
        for v in bits(mask):
            if (mask & ~(1 << v)) & ~self.adj[v]:
                return False
        return True

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled to ``0..len(vertices)-1`` in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u, v in self.edges() if u in index and v in index]
        return Graph.from_edges(len(vertices), edges)

    def degree_sequence(self) -> list[int]:
        return sorted(bin(a).count("1") for a in self.adj)

    # serialisation

    def to_text(self) -> str:
        return f"{self.n};" + ",".join(f"{u}-{v}" for u, v in self.edges())

    def to_json(self) -> dict:
        d: dict = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    def __str__(self):
        return self.to_text()


_EDGE_RE = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*$")


def parse_graph(text: str) -> Graph:
    """Parse ``"<n>;<u>-<v>,<u>-<v>,..."``. Repeated or reversed edges collapse."""
    head, sep, body = text.strip().partition(";")
    if not sep:
        raise GraphParseError(f"missing ';' after vertex count in {text!r}")
    try:
        n = int(head)
    except ValueError:
        raise GraphParseError(f"bad vertex count {head!r}") from None
    if n < 0:
        raise GraphParseError(f"bad vertex count {head!r}")
    edges = []
    for token in body.split(","):
        if not token.strip():
            continue
        m = _EDGE_RE.match(token)
        if m is None:
            raise GraphParseError(f"malformed edge token {token.strip()!r}")
        u, v = int(m.group(1)), int(m.group(2))
        if u >= n or v >= n:
            raise GraphParseError(f"vertex out of range in token {token.strip()!r}")
        if u == v:
            raise GraphParseError(f"loop edge in token {token.strip()!r}")
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def graph_from_json(data: dict | str) -> Graph:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        n = int(data["n"])
        edges = [(int(u), int(v)) for u, v in data.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphParseError(f"bad graph JSON: {exc}") from None
    try:
        return Graph.from_edges(n, edges, data.get("labels"))
    except ValueError as exc:
        raise GraphParseError(str(exc)) from None


def load_graph(source: str) -> Graph:
    """Accept either the edge-list text format or graph JSON."""
    s = source.strip()
    if s.startswith("{"):
        return graph_from_json(s)
    return parse_graph(s)


# constructions

def star(g: Graph, v: int) -> int:
    """Closed neighbourhood of ``v`` as a bitset."""
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range")
    return g.adj[v] | (1 << v)


def double(g: Graph, v: int) -> Graph:
    """Two copies of ``g`` glued along ``St(v)``.

    Original vertices keep their indices; the copies of the vertices outside
    the star are appended in ascending original order.
    """
    st = star(g, v)
    outside = [u for u in range(g.n) if not st >> u & 1]
    prime = {u: u for u in range(g.n) if st >> u & 1}
    prime.update({u: g.n + i for i, u in enumerate(outside)})
    edges = g.edges() + [(prime[a], prime[b]) for a, b in g.edges()]
    return Graph.from_edges(g.n + len(outside), edges)


def join(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    edges = g1.edges() + [(u + shift, v + shift) for u, v in g2.edges()]
    edges += [(u, shift + w) for u in range(g1.n) for w in range(g2.n)]
    return Graph.from_edges(g1.n + g2.n, edges)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    shift = g1.n
    return Graph.from_edges(g1.n + g2.n, g1.edges() + [(u + shift, v + shift) for u, v in g2.edges()])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    return Graph.from_edges(n, [])


def disjoint_cliques(k: int, l: int) -> Graph:
    return disjoint_union(complete(k), complete(l))


def o_n(n: int) -> Graph:
    """Central ``K_n`` on ``0..n-1``; satellite ``n+i`` sees every central vertex but ``i``."""
    edges = list(combinations(range(n), 2))
    edges += [(n + i, c) for i in range(n) for c in range(n) if c != i]
    return Graph.from_edges(2 * n, edges)


def make_named(family: str, *params: int) -> Graph:
    builders = {
        "complete": (complete, 1),
        "edgeless": (edgeless, 1),
        "disjoint_cliques": (disjoint_cliques, 2),
        "o_n": (o_n, 1),
    }
    if family not in builders:
        raise ValueError(f"unknown graph family {family!r}")
    fn, arity = builders[family]
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} parameter(s), got {len(params)}")
    if any(p < 1 for p in params):
        raise ValueError(f"{family} parameters must be positive, got {params}")
    return fn(*params)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    """Backtracking isomorphism test; only meant for the small graphs in tests."""
    if g1.n != g2.n or g1.n_edges != g2.n_edges or g1.degree_sequence() != g2.degree_sequence():
        return False
    n = g1.n
    deg1 = [bin(a).count("1") for a in g1.adj]
    deg2 = [bin(a).count("1") for a in g2.adj]
    order = sorted(range(n), key=lambda v: -deg1[v])
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        v = order[k]
        for w in range(n):
            if used[w] or deg2[w] != deg1[v]:
                continue
            if all(g1.has_edge(v, order[j]) == g2.has_edge(w, image[order[j]]) for j in range(k)):
                image[v] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
        image[v] = -1
        return False

    return extend(0)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
