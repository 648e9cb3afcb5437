"""Exact univariate polynomials over Z and rational functions over Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

from .errors import InvalidInput


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Coefficients ascending by degree, trailing zeros trimmed; ``()`` is zero."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls((0,) * degree + (coeff,))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def linear(cls, a0: int, a1: int) -> "IntPolynomial":
        return cls((a0, a1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(tuple(self[k] + other[k] for k in range(n)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return IntPolynomial(())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "IntPolynomial":
        out = IntPolynomial((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def divmod_exact(self, divisor: "IntPolynomial") -> "IntPolynomial":
        """Quotient of an exact division over Z; raises if not exact."""
        q, r = poly_divmod_q(to_q(self), to_q(divisor))
        if any(x for x in r) or any(x.denominator != 1 for x in q):
            raise ValueError("division is not exact over Z")
        return IntPolynomial(tuple(int(x) for x in q))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str | int]) -> "IntPolynomial":
        return cls(tuple(int(x) for x in data))

    def format(self, var: str = "t") -> str:
        """Descending-degree text, e.g. ``t^3-3t^2+2t``."""
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __str__(self) -> str:
        return self.format()


T = IntPolynomial((0, 1))
ONE = IntPolynomial((1,))


# -- rational helpers ---------------------------------------------------------

def to_q(p: IntPolynomial) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _trim_q(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_divmod_q(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim_q(list(a))
    b = _trim_q(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, x in enumerate(b):
            a[i + shift] -= f * x
        a = _trim_q(a)
    return q, a


def poly_gcd_q(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _trim_q(list(a)), _trim_q(list(b))
    while b:
        _, r = poly_divmod_q(a, b)
        a, b = b, r
    return a


def primitive(c: Sequence[Fraction]) -> IntPolynomial:
    """Integer polynomial proportional to ``c`` with content 1."""
    den = 1
    for x in c:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in c]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return IntPolynomial(tuple(x // g for x in ints)) if g else IntPolynomial(())


@dataclass(frozen=True)
class RationalFunction:
    """``numerator / denominator`` in lowest terms, denominator with positive lowest coefficient."""

    numerator: IntPolynomial
    denominator: IntPolynomial

    @classmethod
    def reduced(cls, num: IntPolynomial, den: IntPolynomial) -> "RationalFunction":
        if den.is_zero():
            raise InvalidInput("zero denominator")
        if num.is_zero():
            return cls(IntPolynomial(()), ONE)
        g = poly_gcd_q(to_q(num), to_q(den))
        nq, _ = poly_divmod_q(to_q(num), g)
        dq, _ = poly_divmod_q(to_q(den), g)
        # clear denominators jointly so the ratio is preserved
        scale = 1
        for x in nq + dq:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        n_int = [int(x * scale) for x in nq]
        d_int = [int(x * scale) for x in dq]
        g2 = 0
        for x in n_int + d_int:
            g2 = gcd(g2, x)
        n_int = [x // g2 for x in n_int]
        d_int = [x // g2 for x in d_int]
        low = next(x for x in d_int if x)
        if low < 0:
            n_int = [-x for x in n_int]
            d_int = [-x for x in d_int]
        return cls(IntPolynomial(tuple(n_int)), IntPolynomial(tuple(d_int)))

    def cross_equal(self, num: IntPolynomial, den: IntPolynomial) -> bool:
        return self.numerator * den == num * self.denominator

    def series(self, terms: int) -> list[Fraction]:
        """First ``terms`` power-series coefficients at t = 0."""
        d = to_q(self.denominator)
        n = to_q(self.numerator)
        if d[0] == 0:
            raise InvalidInput("denominator vanishes at 0")
        out: list[Fraction] = []
        for k in range(terms):
            acc = n[k] if k < len(n) else Fraction(0)
            for j in range(1, min(k, len(d) - 1) + 1):
                acc -= d[j] * out[k - j]
            out.append(acc / d[0])
        return out

    def to_json(self) -> dict[str, list[str]]:
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}

    def __str__(self) -> str:
        return f"({self.numerator}) / ({self.denominator})"


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n`` (including n < 0)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)
