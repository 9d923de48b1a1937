"""TC sequences and the numerator P(x) = (1 - x)^2 * sum_r TC_{r+1} x^r."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .cliques import clique_number, z_r
from .errors import InconsistencyError
from .graph import Graph


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, ``coeffs[i]`` is the coefficient of x^i."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(a) for a in c))

    @classmethod
    def monomial(cls, coeff: int, degree: int) -> IntPolynomial:
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> float | int:
        """Degree, with -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self.coeff(i) + other.coeff(i) for i in range(n)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-a for a in self.coeffs))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(tuple(a * other for a in self.coeffs))
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(tuple(i * a for i, a in enumerate(self.coeffs) if i))

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, data: list[int]) -> IntPolynomial:
        return cls(tuple(int(a) for a in data))

    def __str__(self) -> str:
        # ascending powers: "5x - x^2 - x^3"
        parts = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            mag = abs(a)
            if i == 0:
                body = str(mag)
            else:
                body = ("" if mag == 1 else str(mag)) + ("x" if i == 1 else f"x^{i}")
            if not parts:
                parts.append(body if a > 0 else "-" + body)
            else:
                parts.append(("+ " if a > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        s = text.replace(" ", "")
        if s in ("", "0"):
            return cls()
        if s[0] not in "+-":
            s = "+" + s
        coeffs: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if m is None or not (m.group(2) or m.group(3)):
                raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
            sign, num, var, exp = m.groups()
            c = int(num) if num else 1
            d = (int(exp) if exp else 1) if var else 0
            coeffs[d] = coeffs.get(d, 0) + (c if sign == "+" else -c)
            pos = m.end()
        top = max(coeffs)
        return cls(tuple(coeffs.get(i, 0) for i in range(top + 1)))


_TERM = re.compile(r"([+-])(\d+)?(x(?:\^(\d+))?)?")
ONE_MINUS_X = IntPolynomial((1, -1))


@dataclass(frozen=True)
class TcSequence:
    """TC_2, TC_3, ... up to a horizon, with slope K and stabilisation index e.

    ``values[0]`` is TC_2. TC_1 is taken to be 0.
    """

    values: tuple[int, ...]
    K: int
    e: int
    source: str = field(default="", compare=False)

    def tc(self, r: int) -> int:
        """TC_r, extended linearly with slope K past the stored horizon."""
        if r == 1:
            return 0
        if r < 1:
            raise ValueError("TC_r needs r >= 1")
        last = len(self.values) + 1
        if r <= last:
            return self.values[r - 2]
        return self.values[-1] + (r - last) * self.K

    @property
    def horizon(self) -> int:
        return len(self.values) + 1

    def is_zero(self) -> bool:
        return self.K == 0 and not any(self.values)

    def check(self) -> None:
        full = (0,) + self.values
        if any(v < 0 for v in full) or any(b < a for a, b in zip(full, full[1:])):
            raise ValueError("TC values must be nonnegative and nondecreasing")
        if self.e < 1:
            raise ValueError("stabilisation index must be >= 1")
        if self.e != stabilisation_index(full, self.K):
            raise ValueError(f"e={self.e} is not the minimal stabilisation index")

    def to_json(self) -> dict:
        return {"values": {str(r): v for r, v in enumerate(self.values, start=2)},
                "K": self.K, "e": self.e}


def stabilisation_index(full: tuple[int, ...], K: int) -> int:
    """Minimal s >= 1 with full[r] - full[r-1] == K for all recorded r >= s,
    where ``full[0]`` is TC_1 = 0 and ``full[i]`` is TC_{i+1}."""
    e = len(full)
    for s in range(len(full) - 1, 0, -1):
        if full[s] - full[s - 1] != K:
            break
        e = s
    return e


def sequence_from_values(values: list[int] | tuple[int, ...], K: int | None = None,
                         source: str = "") -> TcSequence:
    """Build a TcSequence from TC_2..TC_h. The slope defaults to the last difference."""
    full = (0,) + tuple(values)
    if K is None:
        if len(full) < 3:
            raise ValueError("need at least TC_2 and TC_3 to infer the slope")
        K = full[-1] - full[-2]
    e = stabilisation_index(full, K)
    if e >= len(full):
        raise ValueError(f"sequence {tuple(values)} never reaches slope {K} inside the window")
    seq = TcSequence(tuple(values), K, e, source)
    seq.check()
    return seq


def tc_sequence(g: Graph) -> TcSequence:
    """TC_r of the RAA group of ``g`` for r = 2..|V|+2."""
    if g.n == 0:
        return TcSequence((0, 0), 0, 1, "empty graph")
    horizon = g.n + 2
    values = tuple(z_r(g, r) for r in range(2, horizon + 1))
    c = clique_number(g)
    full = (0,) + values
    if full[-1] - full[-2] != c or full[-2] - full[-3] != c:
        raise InconsistencyError(
            f"TC sequence {values} has not reached slope c={c} by r={horizon}")
    e = stabilisation_index(full, c)
    return TcSequence(values, c, e, g.to_text())


def poly_from_sequence(seq: TcSequence) -> IntPolynomial:
    seq.check()
    e, K = seq.e, seq.K
    head = IntPolynomial()
    for i in range(2, e):
        head = head + IntPolynomial.monomial(seq.tc(i), i - 1)
    return (head * ONE_MINUS_X * ONE_MINUS_X
            + IntPolynomial.monomial(seq.tc(e), e - 1) * ONE_MINUS_X
            + IntPolynomial.monomial(K, e))


def tc_polynomial(g: Graph) -> IntPolynomial:
    return poly_from_sequence(tc_sequence(g))


@dataclass
class IdentityReport:
    value_at_one: bool
    derivative_at_one: bool
    degree: bool
    details: dict

    @property
    def ok(self) -> bool:
        return self.value_at_one and self.derivative_at_one and self.degree

    def to_json(self) -> dict:
        return {"P(1)=K": self.value_at_one, "P'(1)=eK-TC_e": self.derivative_at_one,
                "deg(P)=e": self.degree, **self.details}


def check_identities(P: IntPolynomial, seq: TcSequence) -> IdentityReport:
    K, e = seq.K, seq.e
    p1 = P(1)
    dp1 = P.derivative()(1)
    expected_dp1 = e * K - seq.tc(e)
    # a contractible space has P = 0 and no degree to speak of
    degree_ok = P.is_zero() if seq.is_zero() else P.degree == e
    return IdentityReport(
        value_at_one=p1 == K,
        derivative_at_one=dp1 == expected_dp1,
        degree=degree_ok,
        details={"P(1)": p1, "K": K, "P'(1)": dp1, "eK-TC_e": expected_dp1,
                 "deg": None if P.is_zero() else P.degree, "e": e},
    )


def series_expand(P: IntPolynomial, order: int) -> list[int]:
    """Coefficients of P(x) / (1 - x)^2 in degrees 0..order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    # 1/(1-x)^2 = sum (k+1) x^k
    return [sum(P.coeff(j) * (r - j + 1) for j in range(r + 1)) for r in range(order + 1)]


def sequence_from_poly(P: IntPolynomial, horizon: int) -> TcSequence:
    """Inverse of :func:`poly_from_sequence`: TC_2..TC_horizon from P."""
    coeffs = series_expand(P, max(horizon - 1, 2))
    if coeffs[0] != 0:
        raise ValueError("P(0) must vanish")
    return sequence_from_values(coeffs[1:horizon], K=P(1))


def lslog_slope_check(seq: TcSequence, cat: int) -> bool:
    return seq.K == cat
