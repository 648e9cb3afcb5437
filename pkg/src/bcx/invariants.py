"""Polynomial invariants read off the broken circuit complex.

Poincaré polynomial, Hilbert series and Hilbert function of the
Stanley-Reisner ring, chromatic polynomials by two independent engines,
the complete-intersection product formula, and Wilf-type coefficient bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .broken import FaceVectors, Ordering, face_vectors
from .errors import CapExceeded, InvalidInput
from .matroid import SimpleGraph, cycle_matroid
from .poly import T, IntPolynomial, RationalFunction, binom

DELCON_STATE_CAP = 400_000


def poincare_polynomial(fv: FaceVectors) -> IntPolynomial:
    """π(t) = Σ_p f_{p-1} t^p."""
    return IntPolynomial(fv.f)


@dataclass(frozen=True)
class HilbertData:
    series: RationalFunction
    f: tuple[int, ...]
    n: int

    def quotient(self, d: int) -> int:
        """Hilbert function of S/I in degree d."""
        if d < 0:
            return 0
        if d == 0:
            return 1
        return sum(self.f[i] * binom(d - 1, i - 1) for i in range(1, len(self.f)))

    def ideal(self, d: int) -> int:
        """Hilbert function of I itself in degree d."""
        return binom(self.n + d - 1, d) - self.quotient(d)


def hilbert_series_and_function(fv: FaceVectors, n: int) -> HilbertData:
    """Σ_p f_{p-1} t^p / (1-t)^p, put over (1-t)^r and reduced."""
    r = fv.r
    one_minus_t = IntPolynomial((1, -1))
    num = IntPolynomial(())
    for p, fp in enumerate(fv.f):
        num = num + IntPolynomial.monomial(p, fp) * one_minus_t ** (r - p)
    return HilbertData(RationalFunction.reduced(num, one_minus_t ** r), fv.f, n)


def poincare_at_t_over_one_minus_t(pi: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
    """(numerator, denominator) of π(t/(1-t)) with denominator (1-t)^deg π."""
    d = pi.degree
    one_minus_t = IntPolynomial((1, -1))
    num = IntPolynomial(())
    for p, c in enumerate(pi.coeffs):
        num = num + IntPolynomial.monomial(p, c) * one_minus_t ** (d - p)
    return num, one_minus_t ** d


# -- chromatic polynomials ----------------------------------------------------

def chromatic_from_faces(fv: FaceVectors, vertices: int) -> IntPolynomial:
    """χ(t) = Σ_p (-1)^p f_{p-1} t^{ℓ-p}, i.e. t^ℓ π(-1/t)."""
    coeffs = [0] * (vertices + 1)
    for p, fp in enumerate(fv.f):
        coeffs[vertices - p] += (-1) ** p * fp
    return IntPolynomial(tuple(coeffs))


def chromatic_whitney(graph: SimpleGraph, order: Ordering | None = None) -> IntPolynomial:
    M = cycle_matroid(graph)
    order = order or Ordering.natural(M.n)
    return chromatic_from_faces(face_vectors(M, order), graph.vertices)


def chromatic_deletion_contraction(graph: SimpleGraph, state_cap: int | None = DELCON_STATE_CAP) -> IntPolynomial:
    """χ(G) = χ(G - e) - χ(G / e), parallel edges collapsed after contraction.

    Forests terminate the recursion: t^{v-e} (t-1)^e.  The memo is keyed on
    the exact labeled state (vertex set, edge set) and lives for one call.
    """
    memo: dict[tuple[frozenset[int], frozenset[tuple[int, int]]], IntPolynomial] = {}
    t_minus_1 = IntPolynomial((-1, 1))

    def is_forest(vs: frozenset[int], es: frozenset[tuple[int, int]]) -> bool:
        parent = {v: v for v in vs}

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in es:
            a, b = find(u), find(v)
            if a == b:
                return False
            parent[a] = b
        return True

    def chi(vs: frozenset[int], es: frozenset[tuple[int, int]]) -> IntPolynomial:
        key = (vs, es)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if is_forest(vs, es):
            out = T ** (len(vs) - len(es)) * t_minus_1 ** len(es)
        else:
            e = min(es)
            u, v = e
            deleted = es - {e}
            contracted = set()
            for a, b in deleted:
                a = u if a == v else a
                b = u if b == v else b
                contracted.add((min(a, b), max(a, b)))
            out = chi(vs, deleted) - chi(vs - {v}, frozenset(contracted))
        memo[key] = out
        if state_cap is not None and len(memo) > state_cap:
            raise CapExceeded(f"deletion-contraction visited more than {state_cap} states")
        return out

    vs = frozenset(range(1, graph.vertices + 1))
    es = frozenset((min(u, v), max(u, v)) for u, v in graph.edges)
    return chi(vs, es)


@dataclass(frozen=True)
class ChromaticPair:
    whitney: IntPolynomial
    delcon: IntPolynomial

    @property
    def agree(self) -> bool:
        return self.whitney == self.delcon


def chromatic_polynomials(graph: SimpleGraph, order: Ordering | None = None) -> ChromaticPair:
    return ChromaticPair(chromatic_whitney(graph, order), chromatic_deletion_contraction(graph))


# -- factorization ------------------------------------------------------------

def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: IntPolynomial) -> list[Fraction]:
    """Rational roots with multiplicity (rational root theorem, then deflation)."""
    roots: list[Fraction] = []
    cur = p
    while cur.degree >= 1 and cur[0] == 0:
        roots.append(Fraction(0))
        cur = IntPolynomial(cur.coeffs[1:])
    changed = True
    while changed and cur.degree >= 1:
        changed = False
        for q in _divisors(cur.leading()):
            for a in _divisors(cur[0]):
                for cand in (Fraction(a, q), Fraction(-a, q)):
                    if cur(cand) == 0:
                        roots.append(cand)
                        cur = cur.divmod_exact(IntPolynomial((-cand.numerator, cand.denominator)))
                        changed = True
                        break
                if changed:
                    break
            if changed:
                break
    return roots


def factors_completely_over_z(p: IntPolynomial) -> bool:
    """True when ``p`` is a product of linear factors over Z (Gauss: same as over Q)."""
    if p.is_zero():
        return False
    return len(rational_roots(p)) == p.degree


@dataclass(frozen=True)
class CIPoincare:
    poly: IntPolynomial
    factors_over_z: bool
    all_quadratic: bool


def ci_poincare_formula(n: int, degrees: Sequence[int]) -> CIPoincare:
    """(t+1)^{n - Σq} Π ((t+1)^q - t^q) for minimal broken circuit sizes q."""
    degrees = list(degrees)
    if any(q < 2 for q in degrees) or sum(degrees) > n:
        raise InvalidInput(f"need every q >= 2 and sum(q) <= n, got {degrees} with n={n}")
    t_plus_1 = IntPolynomial((1, 1))
    poly = t_plus_1 ** (n - sum(degrees))
    for q in degrees:
        poly = poly * (t_plus_1 ** q - T ** q)
    return CIPoincare(poly, factors_completely_over_z(poly), all(q == 2 for q in degrees))


# -- Wilf bounds --------------------------------------------------------------

@dataclass(frozen=True)
class WilfBounds:
    """``b[p-1]`` bounds a_p for p = 1..ℓ-1; ``small_case`` marks ℓ in {3, 4}."""

    vertices: int
    triangle_free_dual: bool
    b: tuple[int, ...]
    small_case: bool
    base_exponent: int
    plus_one_exponent: int
    plus_two_exponent: int

    def bounding_function(self) -> IntPolynomial:
        """Nonnegative-degree part of Q(t) (or R(t)); monic of degree ℓ."""
        body = IntPolynomial((1, 1)) ** self.plus_one_exponent * IntPolynomial((2, 1)) ** self.plus_two_exponent
        shift = self.base_exponent
        if shift >= 0:
            return IntPolynomial.monomial(shift) * body
        return IntPolynomial(body.coeffs[-shift:])


def wilf_bound_coefficients(vertices: int, triangle_free_dual: bool = False) -> WilfBounds:
    ell = vertices
    if ell < 3:
        raise InvalidInput("maximal planar bounds need at least 3 vertices")
    if triangle_free_dual:
        c = -(-ell // 3)
        a_exp, b_exp, base = ell - 2 * c, ell - 3 + c, -ell + 3 + c
    else:
        f = ell // 4
        a_exp, b_exp, base = ell - 2 - 2 * f, ell - 2 + f, -ell + 4 + f
    b = tuple(
        sum(binom(a_exp, p - k) * binom(b_exp, k) * 2 ** k for k in range(min(p, b_exp) + 1))
        for p in range(1, ell)
    )
    return WilfBounds(ell, triangle_free_dual, b, ell in (3, 4), base, a_exp, b_exp)

