"""TC bounds for polyhedral products of real projective spaces P^{n_1}, ..., P^{n_m}.

Both bounds maximise, over pairs of faces (s1, s2), the sum of n_i over the
symmetric difference plus a per-factor weight over the intersection: TC(P^n)
for the upper bound and zcl(P^n) for the lower one. The maximum is always
attained on facets, which is where the search runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Mapping, Sequence

from .cohomology import verify_mixed_lower, zcl_pn
from .errors import InconsistencyError
from .polyhedral import Estimate, SimplicialComplex

PARALLELIZABLE = (1, 3, 7)


@dataclass(frozen=True)
class ProjProfile:
    dims: tuple[int, ...]
    tc_table: Mapping[int, int] = field(default_factory=dict)
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        if any(n < 1 for n in self.dims):
            raise ValueError(f"projective dimensions must be positive: {self.dims}")
        for n, v in self.tc_table.items():
            if n < 1 or not zcl_pn(n) <= v <= 2 * n:
                raise ValueError(f"table value TC(P^{n}) = {v} outside [{zcl_pn(n) if n >= 1 else '?'}, {2 * n}]")

    @property
    def m(self) -> int:
        return len(self.dims)


def parse_proj_profile(text: str | dict) -> ProjProfile:
    data = json.loads(text) if isinstance(text, str) else text
    table = {int(k): int(v) for k, v in data.get("tc_table", {}).items()}
    return ProjProfile(tuple(data["dims"]), table, str(data.get("provenance", "")))


def _exact_case(n: int) -> bool:
    if n in PARALLELIZABLE or n == 6:
        return True
    return n >= 2 and ((n & (n - 1)) == 0 or ((n - 1) & (n - 2)) == 0)


def tc_pn(n: int, table: Mapping[int, int] | None = None) -> Estimate:
    """TC(P^n) where known (parallelizable n, 2^e, 2^e + 1, 6, or the table),
    else the bracket [zcl, 2n]."""
    z = zcl_pn(n)
    if table and n in table:
        v = table[n]
        if not z <= v <= 2 * n:
            raise ValueError(f"table value TC(P^{n}) = {v} outside [{z}, {2 * n}]")
        return Estimate(v, v, True, note="user table")
    if n in PARALLELIZABLE:
        return Estimate(n, n, True, note="parallelizable")
    if _exact_case(n):
        return Estimate(z, z, True, note="equals zcl")
    return Estimate(z, 2 * n, False, note="unknown; bracket [zcl, 2n]")


@dataclass(frozen=True)
class PairMax:
    value: int
    witness: tuple[frozenset[int], frozenset[int]]

    def witness_json(self) -> list[list[int]]:
        return [sorted(self.witness[0]), sorted(self.witness[1])]


def _pair_max(dims: Sequence[int], K: SimplicialComplex, weight: Callable[[int], int],
              all_faces: bool = False) -> PairMax:
    def score(s1, s2):
        return sum(dims[i - 1] for i in s1 ^ s2) + sum(weight(dims[i - 1]) for i in s1 & s2)

    best = None
    for s1, s2 in combinations_with_replacement(K.facets, 2):
        v = score(s1, s2)
        if best is None or v > best.value:
            best = PairMax(v, (s1, s2))
    if best is None:
        best = PairMax(0, (frozenset(), frozenset()))
    if all_faces:
        for s1, s2 in combinations_with_replacement(K.faces(), 2):
            if score(s1, s2) > best.value:
                raise InconsistencyError(
                    f"faces {sorted(s1)}, {sorted(s2)} beat the facet maximum {best.value}")
    return best


def _check(profile: ProjProfile, K: SimplicialComplex) -> None:
    if profile.m != K.m:
        raise ValueError(f"{profile.m} dimensions for a complex on {K.m} vertices")


@dataclass(frozen=True)
class NormBound:
    """The norm with TC(P^n) inserted; ``low`` uses the lower ends of any
    unknown brackets, ``high`` the upper ends."""

    low: PairMax
    high: PairMax

    @property
    def exact(self) -> bool:
        return self.low.value == self.high.value

    @property
    def value(self) -> int:
        return self.high.value


def norm_upper(profile: ProjProfile, K: SimplicialComplex, all_faces: bool = False) -> NormBound:
    _check(profile, K)
    table = profile.tc_table
    low = _pair_max(profile.dims, K, lambda n: tc_pn(n, table).lower, all_faces)
    high = _pair_max(profile.dims, K, lambda n: tc_pn(n, table).upper, all_faces)
    return NormBound(low, high)


def zcl_lower(profile: ProjProfile, K: SimplicialComplex, all_faces: bool = False) -> PairMax:
    """The norm with zcl(P^n) inserted; the witness is re-checked in the
    cohomology ring before it is returned."""
    _check(profile, K)
    best = _pair_max(profile.dims, K, zcl_pn, all_faces)
    check = verify_mixed_lower(profile.dims, K, *best.witness)
    if not check.ok:
        raise InconsistencyError(
            f"zero-divisor product for witness {best.witness_json()} vanishes")
    return best


@dataclass(frozen=True)
class BoundInterval:
    lower: int
    upper: int
    sharp: bool
    lower_witness: PairMax
    upper_witness: PairMax
    tc_equals_zcl: bool

    def __post_init__(self):
        if self.lower > self.upper:
            raise InconsistencyError(f"lower bound {self.lower} exceeds upper bound {self.upper}")

    def to_json(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "sharp": self.sharp,
                "lower_witness": self.lower_witness.witness_json(),
                "upper_witness": self.upper_witness.witness_json(),
                "tc_equals_zcl_on_all_factors": self.tc_equals_zcl}


def tc_bounds(profile: ProjProfile, K: SimplicialComplex) -> BoundInterval:
    low = zcl_lower(profile, K)
    high = norm_upper(profile, K).high
    used = K.vertices
    agree = all(tc_pn(profile.dims[i - 1], profile.tc_table).exact
                and tc_pn(profile.dims[i - 1], profile.tc_table).value == zcl_pn(profile.dims[i - 1])
                for i in used)
    return BoundInterval(low.value, high.value, low.value == high.value, low, high, agree)


def wedge_tc(dims: Sequence[int], table: Mapping[int, int] | None = None) -> Estimate:
    """TC of a wedge of projective spaces: max{n_1 + n_2, TC(P^{n_1})} with n_1 >= n_2 >= ..."""
    ds = sorted((int(n) for n in dims), reverse=True)
    if not ds or ds[-1] < 1:
        raise ValueError("need at least one positive dimension")
    top = tc_pn(ds[0], table)
    pair = ds[0] + (ds[1] if len(ds) > 1 else 0)
    lo, hi = max(pair, top.lower), max(pair, top.upper)
    return Estimate(lo, hi, lo == hi, {"dims": ds})


@dataclass(frozen=True)
class HigherEven:
    value: int
    facet: frozenset[int]
    caveat: str = "valid for large enough r; no threshold is known"

    def to_json(self) -> dict:
        return {"value": self.value, "facet": sorted(self.facet), "caveat": self.caveat,
                "large_r_only": True}


def higher_tc_even(profile: ProjProfile, K: SimplicialComplex, r: int) -> HigherEven:
    _check(profile, K)
    if r < 2:
        raise ValueError("r must be >= 2")
    odd = [n for n in profile.dims if n % 2]
    if odd:
        raise ValueError(f"all dimensions must be even, got odd {odd}")
    best, arg = 0, frozenset()
    for f in K.facets:
        s = sum(r * profile.dims[i - 1] for i in f)
        if s > best:
            best, arg = s, f
    return HigherEven(best, arg)
