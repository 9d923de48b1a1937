"""Clique enumeration and the clique optimisation number z_r.

z_r(G) is the largest total size of r cliques C_1..C_r of G whose common
intersection is empty (the empty set counts as a clique).

Exact search
------------
Every clique lies in a maximal clique, so fix maximal cliques M_1..M_r with
C_i a subset of M_i. A vertex lying in every M_i has to be dropped from at
least one C_i, and dropping it from exactly one suffices, hence

    best total for (M_1..M_r) = sum |M_i| - |M_1 & ... & M_r|.

That quantity depends only on the set S of distinct maximal cliques used and
on how the r slots are filled; the spare r - |S| slots always go to the
largest member of S. :func:`solve_z` runs a dynamic programme over
(intersection, |S|, largest size) states, scanning maximal cliques in sorted
order, so the optimum it returns is exact and its witness is the optimum whose
sorted tuple of maximal-clique indices is lexicographically smallest.

Oracle
------
:func:`z_r_oracle` uses a different encoding: give each vertex a label set
S_v of {0..r-1}, meaning v belongs to C_i iff i is in S_v. The C_i are cliques
iff non-adjacent vertices get disjoint label sets, and the intersection is
empty iff no S_v is the full set; the objective is sum |S_v|. The oracle
searches these assignments exhaustively (with a bound and label-permutation
symmetry breaking) and shares no code with the clique-based search.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .errors import InconsistencyError
from .graph import Graph, bits


def popcount(x: int) -> int:
    return bin(x).count("1")


@lru_cache(maxsize=None)
def _maximal_cliques(g: Graph) -> tuple[int, ...]:
    found = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            found.append(r)
            return
        # pivot maximising |P & N(u)|
        pivot = max(bits(p | x), key=lambda u: popcount(p & g.adj[u]))
        for v in bits(p & ~g.adj[pivot]):
            expand(r | 1 << v, p & g.adj[v], x & g.adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        expand(0, g.vertex_mask, 0)
    return tuple(sorted(found, key=bits))


def maximal_cliques(g: Graph) -> list[int]:
    """Inclusion-maximal cliques as bitsets, ordered by their sorted vertex lists."""
    return list(_maximal_cliques(g))


def clique_number(g: Graph) -> int:
    return max((popcount(c) for c in _maximal_cliques(g)), default=0)


def all_cliques(g: Graph) -> list[int]:
    """Every clique, the empty one included (exponential; small graphs only)."""
    seen = {0}
    for m in _maximal_cliques(g):
        vs = bits(m)
        for k in range(1, len(vs) + 1):
            for sub in combinations(vs, k):
                seen.add(sum(1 << v for v in sub))
    return sorted(seen, key=lambda c: (popcount(c), bits(c)))


@dataclass(frozen=True)
class CliqueTuple:
    """r cliques (bitsets) with empty common intersection."""

    cliques: tuple[int, ...]

    @property
    def r(self) -> int:
        return len(self.cliques)

    @property
    def total(self) -> int:
        return sum(popcount(c) for c in self.cliques)

    def vertex_lists(self) -> list[list[int]]:
        return [bits(c) for c in self.cliques]

    def validate(self, g: Graph) -> None:
        for c in self.cliques:
            if c & ~g.vertex_mask:
                raise ValueError(f"clique {bits(c)} has vertices outside the graph")
            if not g.is_clique(c):
                raise ValueError(f"{bits(c)} is not a clique")
        common = g.vertex_mask
        for c in self.cliques:
            common &= c
        if self.cliques and common:
            raise ValueError(f"cliques share the vertices {bits(common)}")


@lru_cache(maxsize=None)
def solve_z(g: Graph, r: int) -> CliqueTuple:
    """Exact z_r(g) together with a deterministic optimal clique tuple."""
    if r < 2:
        raise ValueError(f"z_r needs r >= 2, got {r}")
    cliques = _maximal_cliques(g)
    if not cliques:
        return CliqueTuple((0,) * r)
    sizes = [popcount(c) for c in cliques]

    # (intersection, number of distinct cliques, largest size) -> (sum of sizes, indices)
    states: dict[tuple[int, int, int], tuple[int, tuple[int, ...]]] = {}

    def offer(key, total, idx):
        cur = states.get(key)
        if cur is None or total > cur[0] or (total == cur[0] and idx < cur[1]):
            states[key] = (total, idx)

    for j, (m, size) in enumerate(zip(cliques, sizes)):
        snapshot = list(states.items())
        offer((m, 1, size), size, (j,))
        for (inter, s, mx), (total, idx) in snapshot:
            if s < r:
                offer((inter & m, s + 1, max(mx, size)), total + size, idx + (j,))

    best_value, best_idx, best_inter = -1, (), 0
    for (inter, s, mx), (total, idx) in states.items():
        value = total + (r - s) * mx - popcount(inter)
        if value > best_value or (value == best_value and idx < best_idx):
            best_value, best_idx, best_inter = value, idx, inter

    chosen = [cliques[j] for j in best_idx]
    biggest = max(chosen, key=popcount)
    chosen += [biggest] * (r - len(chosen))
    chosen[0] &= ~best_inter
    witness = CliqueTuple(tuple(chosen))
    if witness.total != best_value:
        raise InconsistencyError("witness total disagrees with the optimum")
    return witness


def z_r(g: Graph, r: int) -> int:
    return solve_z(g, r).total


ORACLE_MAX_VERTICES = 12
ORACLE_MAX_R = 5


def z_r_oracle(g: Graph, r: int) -> int:
    """Exhaustive label-set search for z_r; guarded to |V| <= 12 and r <= 5."""
    if r < 2:
        raise ValueError(f"z_r needs r >= 2, got {r}")
    if g.n > ORACLE_MAX_VERTICES or r > ORACLE_MAX_R:
        raise ValueError(f"oracle size guard exceeded (n={g.n}, r={r})")
    n = g.n
    full = (1 << r) - 1
    nonadj = [g.vertex_mask & ~g.adj[v] & ~(1 << v) for v in range(n)]
    subsets = sorted(range(full), key=lambda s: -popcount(s))
    labels = [0] * n
    best = 0

    def forbidden(u: int, upto: int) -> int:
        f = 0
        for w in bits(nonadj[u] & ((1 << upto) - 1)):
            f |= labels[w]
        return f

    def dfs(v: int, total: int, used: int) -> None:
        nonlocal best
        if v == n:
            best = max(best, total)
            return
        bound = total
        for u in range(v, n):
            bound += min(popcount(full & ~forbidden(u, v)), r - 1)
        if bound <= best:
            return
        allowed = full & ~forbidden(v, v)
        unused = full & ~used
        # unused labels are interchangeable: only the lowest ones may be opened
        take_order = bits(unused)
        for s in subsets:
            if s & ~allowed:
                continue
            fresh = s & unused
            k = popcount(fresh)
            if fresh != sum(1 << b for b in take_order[:k]):
                continue
            labels[v] = s
            dfs(v + 1, total + popcount(s), used | s)
        labels[v] = 0

    dfs(0, 0, 0)
    return best


@dataclass(frozen=True)
class ShortcutCertificate:
    k: int
    positions: tuple[int, ...]
    value: int


def z_shortcut_check(g: Graph, r: int, witness: CliqueTuple) -> ShortcutCertificate | None:
    """If some k < r members of an optimal witness already have empty
    intersection, z_r = z_k + (r - k) c(g); return that certified value.

    The smallest such k is used, with z_1 taken as 0 (a witness containing
    the empty clique).
    """
    witness.validate(g)
    if witness.r != r:
        raise ValueError(f"witness has {witness.r} cliques, expected {r}")
    target = z_r(g, r)
    if witness.total != target:
        raise ValueError(f"witness total {witness.total} does not realise z_{r} = {target}")
    for k in range(1, r):
        for pos in combinations(range(r), k):
            common = g.vertex_mask
            for p in pos:
                common &= witness.cliques[p]
            if common == 0:
                zk = 0 if k == 1 else z_r(g, k)
                value = zk + (r - k) * clique_number(g)
                if value != target:
                    raise InconsistencyError(
                        f"z_{k} + (r-k)c = {value} differs from z_{r} = {target}")
                return ShortcutCertificate(k, pos, value)
    return None


def has_two_disjoint_maximum_cliques(g: Graph) -> bool:
    c = clique_number(g)
    biggest = [m for m in _maximal_cliques(g) if popcount(m) == c]
    return any(a & b == 0 for a, b in combinations(biggest, 2))
