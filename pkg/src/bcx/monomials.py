"""Monomial ideals in ``K[x_1, ..., x_n]`` with exponent-tuple monomials."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidInput

Monomial = tuple[int, ...]


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))


def support(a: Monomial) -> frozenset[int]:
    return frozenset(i + 1 for i, x in enumerate(a) if x)


def from_support(n: int, elements: Iterable[int]) -> Monomial:
    exps = [0] * n
    for e in elements:
        exps[e - 1] += 1
    return tuple(exps)


def format_monomial(a: Monomial) -> str:
    parts = []
    for i, x in enumerate(a, start=1):
        if x == 1:
            parts.append(f"x{i}")
        elif x > 1:
            parts.append(f"x{i}^{x}")
    return "*".join(parts) if parts else "1"


def parse_monomial(n: int, text: str) -> Monomial:
    """Inverse of :func:`format_monomial` (``"x1*x2^3"``)."""
    exps = [0] * n
    text = text.strip()
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        var, _, power = factor.strip().partition("^")
        if not var.startswith("x"):
            raise InvalidInput(f"bad monomial factor {factor!r}")
        i = int(var[1:])
        if not 1 <= i <= n:
            raise InvalidInput(f"variable {var} outside x1..x{n}")
        exps[i - 1] += int(power) if power else 1
    return tuple(exps)


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    gens = sorted(set(gens), key=lambda m: (sum(m), tuple(-x for x in m)))
    out: list[Monomial] = []
    for g in gens:
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out, key=_gen_key))


def _gen_key(m: Monomial):
    return sum(m), tuple(sorted(support(m))), m


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    generators: tuple[Monomial, ...]
    minimal: bool = True

    @classmethod
    def from_generators(cls, n: int, gens: Iterable[Sequence[int]]) -> "MonomialIdeal":
        gens = [tuple(int(x) for x in g) for g in gens]
        for g in gens:
            if len(g) != n or min(g, default=0) < 0:
                raise InvalidInput(f"bad exponent vector {g}")
        return cls(n, minimalize(gens), True)

    @classmethod
    def from_supports(cls, n: int, supports: Iterable[Iterable[int]]) -> "MonomialIdeal":
        return cls.from_generators(n, [from_support(n, s) for s in supports])

    @classmethod
    def parse(cls, n: int, texts: Iterable[str], *, minimalize_input: bool = True) -> "MonomialIdeal":
        gens = tuple(parse_monomial(n, t) for t in texts)
        if minimalize_input:
            return cls(n, minimalize(gens), True)
        is_min = len(set(gens)) == len(gens) and set(minimalize(gens)) == set(gens)
        return cls(n, gens, is_min)

    def is_zero(self) -> bool:
        return not self.generators

    def is_squarefree(self) -> bool:
        return all(x <= 1 for g in self.generators for x in g)

    def degrees(self) -> list[int]:
        return sorted(sum(g) for g in self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.generators)

    def is_complete_intersection(self) -> bool:
        """Monomial ideals are CIs exactly when minimal generators are pairwise coprime."""
        return all(coprime(a, b) for a, b in itertools.combinations(self.generators, 2))

    def codim(self) -> int:
        """Height: smallest variable set meeting every generator's support.

        The minimal primes of a monomial ideal are generated by variable
        sets that are minimal transversals of the supports.
        """
        if not self.generators:
            return 0
        supports = [support(g) for g in self.generators]
        for k in range(1, self.n + 1):
            for S in itertools.combinations(range(1, self.n + 1), k):
                s = set(S)
                if all(sup & s for sup in supports):
                    return k
        raise InvalidInput("unit ideal has no finite codimension")

    def strings(self) -> list[str]:
        return [format_monomial(g) for g in self.generators]

    def __str__(self) -> str:
        return "(" + ", ".join(self.strings()) + ")" if self.generators else "(0)"
