"""Mod-2 cohomology of polyhedral products of real projective spaces.

H^*(P^K; F2) is F2[u_1..u_m] modulo u_i^{n_i+1} and the monomials whose
support is not a face of K. Monomials are exponent tuples, ring elements are
frozensets of monomials (addition is symmetric difference) and elements of
the tensor square are frozensets of monomial pairs.

Indices i in the public API are 1-based, matching the complex vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import InconsistencyError
from .polyhedral import SimplicialComplex

Monomial = tuple[int, ...]
RingElement = frozenset  # of Monomial
TensorElement = frozenset  # of (Monomial, Monomial)


def zcl_pn(n: int) -> int:
    """Zero-divisor cup-length of P^n over F2: 2^t - 1 with 2^(t-1) <= n < 2^t."""
    if n < 1:
        raise ValueError(f"projective dimension must be >= 1, got {n}")
    return (1 << n.bit_length()) - 1


def _check(dims: Sequence[int], K: SimplicialComplex) -> None:
    if len(dims) != K.m:
        raise ValueError(f"{len(dims)} dimensions for a complex on {K.m} vertices")


def support(mono: Monomial) -> frozenset[int]:
    return frozenset(i + 1 for i, e in enumerate(mono) if e)


def admissible(mono: Monomial, dims: Sequence[int], K: SimplicialComplex) -> bool:
    return all(0 <= e <= n for e, n in zip(mono, dims)) and K.is_face(support(mono))


def one(m: int) -> Monomial:
    return (0,) * m


def u(i: int, dims: Sequence[int], power: int = 1) -> Monomial:
    mono = [0] * len(dims)
    mono[i - 1] = power
    return tuple(mono)


def element(monos: Iterable[Monomial], dims: Sequence[int], K: SimplicialComplex) -> RingElement:
    """Sum of the given monomials; inadmissible ones are zero in the ring
    and are dropped."""
    out: set = set()
    for mono in monos:
        if admissible(mono, dims, K):
            out ^= {tuple(mono)}
    return frozenset(out)


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def multiply(a: RingElement, b: RingElement, dims: Sequence[int], K: SimplicialComplex) -> RingElement:
    _check(dims, K)
    out: set = set()
    for x in a:
        for y in b:
            z = _mono_mul(x, y)
            if admissible(z, dims, K):
                out ^= {z}
    return frozenset(out)


def tensor_multiply(a: TensorElement, b: TensorElement, dims: Sequence[int],
                    K: SimplicialComplex) -> TensorElement:
    _check(dims, K)
    out: set = set()
    for l1, r1 in a:
        for l2, r2 in b:
            left, right = _mono_mul(l1, l2), _mono_mul(r1, r2)
            if admissible(left, dims, K) and admissible(right, dims, K):
                out ^= {(left, right)}
    return frozenset(out)


def tensor_one(m: int) -> TensorElement:
    return frozenset({(one(m), one(m))})


def zd_power(i: int, p: int, dims: Sequence[int], K: SimplicialComplex) -> TensorElement:
    """(u_i x 1 + 1 x u_i)^p. By Lucas, C(p, k) is odd iff k is a submask of p."""
    _check(dims, K)
    if p < 0:
        raise ValueError("power must be >= 0")
    if not 1 <= i <= K.m:
        raise IndexError(f"factor {i} out of range 1..{K.m}")
    out: set = set()
    for k in range(p + 1):
        if k & ~p:
            continue
        left, right = u(i, dims, p - k), u(i, dims, k)
        if admissible(left, dims, K) and admissible(right, dims, K):
            out.add((left, right))
    return frozenset(out)


def zd_product(powers: dict[int, int], dims: Sequence[int], K: SimplicialComplex) -> TensorElement:
    """prod_i (u_i x 1 + 1 x u_i)^{p_i}."""
    acc = tensor_one(K.m)
    for i in sorted(powers):
        acc = tensor_multiply(acc, zd_power(i, powers[i], dims, K), dims, K)
        if not acc:
            break
    return acc


@dataclass(frozen=True)
class MixedCheck:
    ok: bool
    pair: tuple[Monomial, Monomial]
    terms: int
    powers: dict

    def to_json(self) -> dict:
        return {"ok": self.ok, "located": {"left": list(self.pair[0]), "right": list(self.pair[1])},
                "terms": self.terms, "powers": {str(i): p for i, p in sorted(self.powers.items())}}


def verify_mixed_lower(dims: Sequence[int], K: SimplicialComplex,
                       s1: Iterable[int], s2: Iterable[int]) -> MixedCheck:
    """Expand prod over s1^s2 of zd^{n_i} times prod over s1&s2 of zd^{zcl(n_i)}
    and look for the basis pair that certifies it is nonzero."""
    _check(dims, K)
    s1, s2 = frozenset(s1), frozenset(s2)
    for s in (s1, s2):
        if not K.is_face(s):
            raise ValueError(f"{sorted(s)} is not a face of the complex")
    both = s1 & s2
    powers = {i: dims[i - 1] for i in s1 ^ s2}
    powers.update({i: zcl_pn(dims[i - 1]) for i in both})
    left = [0] * K.m
    right = [0] * K.m
    for i in s1:
        left[i - 1] = dims[i - 1]
    for i in s2 - s1:
        right[i - 1] = dims[i - 1]
    for i in both:
        right[i - 1] = zcl_pn(dims[i - 1]) - dims[i - 1]
    pair = (tuple(left), tuple(right))
    product = zd_product(powers, dims, K)
    located = pair in product
    if located != bool(product):
        raise InconsistencyError(
            f"certifying pair {'present' if located else 'absent'} but product has {len(product)} terms")
    return MixedCheck(located, pair, len(product), powers)


class BudgetExceeded(ValueError):
    pass


def zcl_search(dims: Sequence[int], K: SimplicialComplex, budget: int = 10**6) -> int:
    """Largest sum p_i with prod (u_i x 1 + 1 x u_i)^{p_i} nonzero.

    Only products of the standard zero-divisors are searched, so the result
    is a lower bound for the zero-divisor cup-length.
    """
    _check(dims, K)
    if prod(n + 1 for n in dims) > budget:
        raise BudgetExceeded(f"search space {prod(n + 1 for n in dims)} exceeds budget {budget}")
    m = K.m
    caps = [zcl_pn(n) for n in dims]
    best = 0

    def dfs(i: int, acc: TensorElement, total: int) -> None:
        nonlocal best
        best = max(best, total)
        if i == m or total + sum(caps[i:]) <= best:
            return
        # zd_i^p already vanishes for p > zcl(n_i); scan downward so good totals come first
        for p in range(caps[i], -1, -1):
            nxt = tensor_multiply(acc, zd_power(i + 1, p, dims, K), dims, K)
            if nxt:
                dfs(i + 1, nxt, total + p)
            if total + p - 1 + sum(caps[i + 1:]) <= best:
                break

    dfs(0, tensor_one(m), 0)
    return best
