"""Central arrangements over Q, their relation spaces and Orlik-Terao ideals.

A form α_i is a column vector; a relation is a vector ``a`` with
Σ a_i α_i = 0.  For a relation ``r`` with support Λ, ``∂(r)`` is
Σ_{i∈Λ} a_i x_{Λ-i}.  The Gröbner side is a plain Buchberger criterion
check over exact rationals.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import linalg
from .broken import (
    Ordering,
    broken_circuit,
    face_vectors,
    find_ci_ordering,
    minimal_bc_masks,
    stanley_reisner_ideal,
)
from .classification import classify_matroid
from .errors import BudgetExhausted, CapExceeded, InvalidInput, InvariantViolation
from .invariants import poincare_at_t_over_one_minus_t, poincare_polynomial
from .matroid import VECTOR_CAP, Matroid, SimpleGraph, elements_of, popcount, to_mask, vector_matroid
from .monomials import (
    Monomial,
    MonomialIdeal,
    coprime,
    divides,
    format_monomial,
    from_support,
    lcm,
    minimalize,
    quotient,
)
from .poly import RationalFunction

REDUCTION_GUARD = 200_000


# -- arrangements -------------------------------------------------------------

@dataclass(frozen=True)
class Arrangement:
    """``forms[i]`` is α_{i+1}, a vector of length ``r``."""

    r: int
    forms: tuple[tuple[Fraction, ...], ...]
    name: str = ""

    def __post_init__(self):
        forms = tuple(tuple(Fraction(x) for x in f) for f in self.forms)
        object.__setattr__(self, "forms", forms)
        if any(len(f) != self.r for f in forms):
            raise InvalidInput(f"every form must have length {self.r}")
        for i, f in enumerate(forms, start=1):
            if all(x == 0 for x in f):
                raise InvalidInput(f"form {i} is zero")
        for i, j in itertools.combinations(range(len(forms)), 2):
            if linalg.column_rank([forms[i], forms[j]]) < 2:
                raise InvalidInput(f"forms {i + 1} and {j + 1} are parallel")
        if linalg.column_rank(list(forms)) != self.r:
            raise InvalidInput("forms do not span the ambient space (not essential)")

    @property
    def n(self) -> int:
        return len(self.forms)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[object]], name: str = "") -> "Arrangement":
        """Columns of the ``r x n`` matrix are the forms."""
        m = linalg.to_fractions(rows)
        if not m or not m[0]:
            raise InvalidInput("empty matrix")
        return cls(len(m), tuple(tuple(c) for c in linalg.transpose(m)), name)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[object]], name: str = "") -> "Arrangement":
        cols = [tuple(Fraction(x) for x in c) for c in columns]
        if not cols:
            raise InvalidInput("no forms")
        return cls(len(cols[0]), tuple(cols), name)

    def matrix(self) -> list[list[Fraction]]:
        return linalg.transpose([list(f) for f in self.forms])

    def transform(self, g: Sequence[Sequence[object]]) -> "Arrangement":
        """Apply an invertible ``r x r`` matrix to every form."""
        G = linalg.to_fractions(g)
        if len(G) != self.r or linalg.rank(G) != self.r:
            raise InvalidInput("coordinate change must be invertible")
        cols = [tuple(sum(G[i][k] * f[k] for k in range(self.r)) for i in range(self.r)) for f in self.forms]
        return Arrangement(self.r, tuple(cols), self.name)


def essentialize(columns: Sequence[Sequence[object]], name: str = "") -> Arrangement:
    """Rewrite forms in coordinates of the space they span (row-reduce, drop zero rows)."""
    cols = [[Fraction(x) for x in c] for c in columns]
    red, pivots = linalg.rref(linalg.transpose(cols))
    rows = red[:len(pivots)]
    return Arrangement.from_matrix(rows, name)


def boolean(r: int) -> Arrangement:
    return Arrangement(r, tuple(tuple(int(i == j) for j in range(r)) for i in range(r)), f"boolean{r}")


def product(a1: Arrangement, a2: Arrangement) -> Arrangement:
    forms = [f + (Fraction(0),) * a2.r for f in a1.forms]
    forms += [(Fraction(0),) * a1.r + f for f in a2.forms]
    return Arrangement(a1.r + a2.r, tuple(forms), "")


def cone(a: Arrangement) -> Arrangement:
    """Product with one hyperplane in a new coordinate; the matroid gains a coloop."""
    return product(a, boolean(1))


def is_generic(a: Arrangement, p: int) -> bool:
    """Every p forms independent (so all circuits are (p+1)-subsets)."""
    return all(linalg.column_rank([a.forms[i] for i in idx]) == p
               for idx in itertools.combinations(range(a.n), p))


def generic(p: int, count: int, seed: int = 0, *, spread: int = 5, tries: int = 1000) -> Arrangement:
    """Generic central arrangement of ``count`` forms in dimension ``p``, by rejection sampling."""
    if not 1 <= p <= count:
        raise InvalidInput("need 1 <= p <= count")
    rng = random.Random(seed)
    for _ in range(tries):
        cols = [tuple(Fraction(rng.randint(-spread, spread), rng.randint(1, 3)) for _ in range(p))
                for _ in range(count)]
        if linalg.column_rank(cols) != p:
            continue
        if any(all(x == 0 for x in c) for c in cols):
            continue
        cand = tuple(cols)
        if all(linalg.column_rank([cand[i] for i in idx]) == p
               for idx in itertools.combinations(range(count), p)):
            try:
                return Arrangement(p, cand, f"generic({p},{count})")
            except InvalidInput:
                continue
    raise InvalidInput(f"no generic arrangement found in {tries} tries")


def graphic_arrangement(graph: SimpleGraph) -> Arrangement:
    """Forms x_u - x_v for each edge, in coordinates of their span."""
    cols = []
    for u, v in graph.edges:
        c = [0] * graph.vertices
        c[u - 1], c[v - 1] = 1, -1
        cols.append(c)
    return essentialize(cols, "graphic")


def braid_arrangement(k: int) -> Arrangement:
    """Forms e_i - e_j (i < j) on k coordinates, restricted to the sum-zero space."""
    edges = list(itertools.combinations(range(1, k + 1), 2))
    a = graphic_arrangement(SimpleGraph(k, edges))
    return Arrangement(a.r, a.forms, f"braid{k}")


def underlying_matroid(a: Arrangement) -> Matroid:
    if a.n > VECTOR_CAP:
        raise CapExceeded(f"{a.n} forms exceeds cap {VECTOR_CAP}")
    return vector_matroid(a.forms, name=a.name)


# -- relations ----------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """Sparse coefficients ``{i: a_i}`` with Σ a_i α_i = 0."""

    coeffs: tuple[tuple[int, Fraction], ...]

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.coeffs)

    def dense(self, n: int) -> list[Fraction]:
        v = [Fraction(0)] * n
        for i, a in self.coeffs:
            v[i - 1] = a
        return v

    @classmethod
    def from_dense(cls, v: Sequence[Fraction]) -> "Relation":
        items = [(i + 1, Fraction(a)) for i, a in enumerate(v) if a != 0]
        if not items:
            raise InvalidInput("zero relation")
        return cls(tuple(items))

    def normalized(self) -> "Relation":
        lead = self.coeffs[0][1]
        return Relation(tuple((i, a / lead) for i, a in self.coeffs))

    def holds(self, a: Arrangement) -> bool:
        return all(sum(c * a.forms[i - 1][k] for i, c in self.coeffs) == 0 for k in range(a.r))

    def format(self) -> str:
        parts = []
        for i, c in self.coeffs:
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = f"x{i}" if mag == 1 else f"{mag}*x{i}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            text += f" {s} {b}"
        return text


def circuit_relation(a: Arrangement, circuit: Iterable[int]) -> Relation:
    """The relation supported on a circuit, normalized so the smallest index has coefficient 1."""
    C = sorted(set(circuit))
    if not C or C[0] < 1 or C[-1] > a.n:
        raise InvalidInput(f"bad element set {C}")
    cols = [a.forms[i - 1] for i in C]
    ns = linalg.nullspace(linalg.transpose([list(c) for c in cols]), len(C))
    if len(ns) != 1:
        raise InvalidInput(f"{C} is not a circuit (relation space of dimension {len(ns)})")
    v = ns[0]
    if any(x == 0 for x in v):
        raise InvalidInput(f"{C} is not a circuit (relation misses some element)")
    rel = Relation(tuple(zip(C, v))).normalized()
    if not rel.holds(a):
        raise InvariantViolation("nullspace vector fails the relation")
    return rel


def relation_space(a: Arrangement) -> list[list[Fraction]]:
    """Basis of F(A); dimension n - r for an essential arrangement."""
    return linalg.nullspace(a.matrix(), a.n)


# -- polynomials --------------------------------------------------------------

@dataclass(frozen=True)
class MultiPoly:
    """Sparse polynomial ``{monomial: coefficient}`` in ``n`` variables, no zero coefficients."""

    n: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    @classmethod
    def from_dict(cls, n: int, d: dict[Monomial, Fraction]) -> "MultiPoly":
        return cls(n, tuple(sorted((m, Fraction(c)) for m, c in d.items() if c != 0)))

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(m) for m, _ in self.terms}

    def format(self, order: "MonomialOrder | None" = None) -> str:
        items = list(self.terms)
        if order is not None:
            items.sort(key=lambda t: order.key(t[0]), reverse=True)
        if not items:
            return "0"
        out = ""
        for k, (m, c) in enumerate(items):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = format_monomial(m)
            body = mono if mag == 1 else (f"{mag}" if mono == "1" else f"{mag}*{mono}")
            out += (("-" if sign == "-" else "") if k == 0 else f" {sign} ") + body
        return out


def boundary(rel: Relation, n: int) -> MultiPoly:
    """∂(r) = Σ_{i∈Λ} a_i x_{Λ-i}."""
    supp = sorted(rel.support)
    out: dict[Monomial, Fraction] = {}
    for i, c in rel.coeffs:
        m = from_support(n, [j for j in supp if j != i])
        out[m] = out.get(m, Fraction(0)) + c
    return MultiPoly.from_dict(n, out)


def ot_generators(a: Arrangement, M: Matroid | None = None) -> list[tuple[frozenset[int], MultiPoly]]:
    """``(C, ∂(r_C))`` for every circuit, in circuit order."""
    M = M or underlying_matroid(a)
    return [(frozenset(elements_of(c)), boundary(circuit_relation(a, elements_of(c)), a.n)) for c in M.circuits]


# -- monomial orders and Buchberger -------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """``precedence[0]`` is the largest variable; ``kind`` is lex or degrevlex."""

    kind: str
    precedence: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex"):
            raise InvalidInput(f"unknown monomial order {self.kind!r}")

    @classmethod
    def induced(cls, order: Ordering, kind: str) -> "MonomialOrder":
        """x_i > x_j exactly when j ≺ i, so the ≺-largest element is the largest variable."""
        return cls(kind, tuple(reversed(order.sequence)))

    def key(self, m: Monomial):
        if self.kind == "lex":
            return tuple(m[v - 1] for v in self.precedence)
        return (sum(m),) + tuple(-m[v - 1] for v in reversed(self.precedence))


def leading(f: dict[Monomial, Fraction], order: MonomialOrder) -> tuple[Monomial, Fraction]:
    m = max(f, key=order.key)
    return m, f[m]


def _sub_multiple(f: dict[Monomial, Fraction], g: dict[Monomial, Fraction], mono: Monomial, c: Fraction) -> None:
    """f -= c * mono * g, in place."""
    for m, a in g.items():
        t = tuple(x + y for x, y in zip(m, mono))
        v = f.get(t, Fraction(0)) - c * a
        if v:
            f[t] = v
        else:
            f.pop(t, None)


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder,
                guard: int = REDUCTION_GUARD) -> MultiPoly:
    """Full reduction of ``f`` by ``basis``; the remainder has no reducible term."""
    gs = []
    for g in basis:
        d = g.as_dict()
        if d:
            gs.append((d, *leading(d, order)))
    p = f.as_dict()
    rem: dict[Monomial, Fraction] = {}
    steps = 0
    while p:
        steps += 1
        if steps > guard:
            raise InvariantViolation("reduction step guard exceeded")
        m, c = leading(p, order)
        for d, lm, lc in gs:
            if divides(lm, m):
                _sub_multiple(p, d, quotient(m, lm), c / lc)
                break
        else:
            rem[m] = c
            del p[m]
    return MultiPoly.from_dict(f.n, rem)


def s_polynomial(f: MultiPoly, g: MultiPoly, order: MonomialOrder) -> MultiPoly:
    fd, gd = f.as_dict(), g.as_dict()
    lf, cf = leading(fd, order)
    lg, cg = leading(gd, order)
    L = lcm(lf, lg)
    out: dict[Monomial, Fraction] = {}
    _sub_multiple(out, fd, quotient(L, lf), -1 / cf)
    _sub_multiple(out, gd, quotient(L, lg), 1 / cg)
    return MultiPoly.from_dict(f.n, out)


@dataclass(frozen=True)
class GroebnerCheck:
    is_groebner: bool
    initial: MonomialIdeal
    matches_stanley_reisner: bool
    leading_is_broken_circuit: bool
    pairs: int
    skipped_coprime: int
    failing_pair: tuple[frozenset[int], frozenset[int]] | None = None


def buchberger_criterion(polys: Sequence[MultiPoly], order: MonomialOrder) -> tuple[bool, int, int, int | None]:
    """(passes, pairs checked, pairs skipped as coprime, first failing pair index or None)."""
    leads = [leading(p.as_dict(), order)[0] for p in polys]
    checked = skipped = 0
    for idx, (i, j) in enumerate(itertools.combinations(range(len(polys)), 2)):
        if coprime(leads[i], leads[j]):
            skipped += 1
            continue
        checked += 1
        s = s_polynomial(polys[i], polys[j], order)
        if not normal_form(s, polys, order).is_zero():
            return False, checked, skipped, idx
    return True, checked, skipped, None


def groebner_verify(a: Arrangement, order: Ordering, kind: str = "degrevlex",
                    M: Matroid | None = None) -> GroebnerCheck:
    """Check that the circuit generators form a Gröbner basis with initial ideal x_{bc}."""
    M = M or underlying_matroid(a)
    order.check(a.n)
    mo = MonomialOrder.induced(order, kind)
    gens = ot_generators(a, M)
    polys = [p for _, p in gens]
    lead_ok = True
    leads = []
    for C, p in gens:
        lm, _ = leading(p.as_dict(), mo)
        leads.append(lm)
        if lm != from_support(a.n, elements_of(broken_circuit(to_mask(C), order))):
            lead_ok = False
    ok, checked, skipped, fail = buchberger_criterion(polys, mo)
    failing = None
    if fail is not None:
        i, j = list(itertools.combinations(range(len(gens)), 2))[fail]
        failing = (gens[i][0], gens[j][0])
    initial = MonomialIdeal(a.n, minimalize(leads), True)
    sr = stanley_reisner_ideal(M, order)
    return GroebnerCheck(ok, initial, initial.generators == sr.generators, lead_ok, checked, skipped, failing)


# -- 2-formality, membership, Hilbert function --------------------------------

def two_formal_check(a: Arrangement, M: Matroid | None = None) -> bool:
    """The 3-circuit relations span the whole relation space."""
    M = M or underlying_matroid(a)
    rels = [circuit_relation(a, elements_of(c)).dense(a.n) for c in M.circuits if popcount(c) == 3]
    dim = a.n - a.r
    return (linalg.rank(rels) if rels else 0) == dim


def relation_membership_check(a: Arrangement, order: Ordering, *, trials: int = 10, seed: int = 0,
                              kind: str = "degrevlex", M: Matroid | None = None) -> bool:
    """For a CI instance, ∂ of random relations in the span of a generator subfamily lies in its ideal.

    Generators are the circuits whose broken circuits are the minimal ones;
    their leading terms are pairwise coprime so the subfamily is a Gröbner
    basis of the ideal it generates and normal form decides membership.
    """
    M = M or underlying_matroid(a)
    mins = set(minimal_bc_masks(M, order))
    family = [c for c in M.circuits if broken_circuit(c, order) in mins]
    mo = MonomialOrder.induced(order, kind)
    rels = {c: circuit_relation(a, elements_of(c)) for c in family}
    polys = {c: boundary(rels[c], a.n) for c in family}
    leads = [leading(polys[c].as_dict(), mo)[0] for c in family]
    if not all(coprime(x, y) for x, y in itertools.combinations(leads, 2)):
        raise InvalidInput("minimal broken circuits are not pairwise disjoint under this ordering")
    rng = random.Random(seed)
    for _ in range(trials):
        k = rng.randint(1, len(family)) if family else 0
        sub = rng.sample(family, k)
        if not sub:
            continue
        v = [Fraction(0)] * a.n
        for c in sub:
            w = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
            for i, x in enumerate(rels[c].dense(a.n)):
                v[i] += w * x
        if all(x == 0 for x in v):
            continue
        rel = Relation.from_dense(v)
        if not rel.holds(a):
            raise InvariantViolation("combined relation fails")
        if not normal_form(boundary(rel, a.n), [polys[c] for c in sub], mo).is_zero():
            return False
    return True


def standard_monomial_counts(initial: MonomialIdeal, max_degree: int) -> list[int]:
    """Monomials of each degree outside a squarefree initial ideal, counted one by one."""
    if not initial.is_squarefree():
        raise InvalidInput("expected a squarefree initial ideal")
    n = initial.n
    gens = [to_mask(i + 1 for i, x in enumerate(g) if x) for g in initial.generators]
    out = []
    for d in range(max_degree + 1):
        count = 0
        for combo in itertools.combinations_with_replacement(range(n), d):
            s = 0
            for i in combo:
                s |= 1 << i
            if not any(g & s == g for g in gens):
                count += 1
        out.append(count)
    return out


def hilbert_agreement(a: Arrangement, order: Ordering, max_degree: int = 8,
                      M: Matroid | None = None) -> tuple[list[int], list[int]]:
    """(direct count from the initial ideal, expansion of π(t/(1-t)))."""
    M = M or underlying_matroid(a)
    initial = groebner_verify(a, order, "degrevlex", M).initial
    direct = standard_monomial_counts(initial, max_degree)
    pi = poincare_polynomial(face_vectors(M, order))
    num, den = poincare_at_t_over_one_minus_t(pi)
    series = RationalFunction.reduced(num, den).series(max_degree + 1)
    return direct, [int(x) for x in series]


# -- classification -----------------------------------------------------------

def classify_arrangement(a: Arrangement, *, budget: int | None = None, workers: int = 1,
                         order: Ordering | None = None, kind: str = "degrevlex") -> dict[str, Any]:
    """Matroid classification plus the Orlik-Terao view.

    CI of the Orlik-Terao ideal is decided through the CI-ordering search on
    the underlying matroid; budget exhaustion is reported as undetermined.
    """
    M = underlying_matroid(a)
    try:
        search = find_ci_ordering(M, budget, workers=workers)
        status = search.status
    except BudgetExhausted:
        search, status = None, "undetermined"
    use = order
    if use is None:
        use = search.ordering if search is not None and search.ordering is not None else Ordering.natural(a.n)
    report = classify_matroid(M, use, budget=budget).to_json()
    gb = groebner_verify(a, use, kind, M)
    two_formal = two_formal_check(a, M)
    ci = {"found": True, "proven-none": False}.get(status)
    out: dict[str, Any] = {
        "arrangement": {"r": a.r, "n": a.n},
        "matroid": report,
        "ot_complete_intersection": "undetermined" if ci is None else ci,
        "ci_search": status,
        "two_formal": two_formal,
        "groebner": {
            "order": kind,
            "is_groebner": gb.is_groebner,
            "initial": gb.initial.strings(),
            "matches_stanley_reisner": gb.matches_stanley_reisner,
            "leading_is_broken_circuit": gb.leading_is_broken_circuit,
        },
    }
    if ci and search is not None and search.ordering is not None:
        degrees = sorted(len(b) for b in search.minimal or ())
        ci_report = report if use == search.ordering else classify_matroid(M, search.ordering, budget=budget).to_json()
        quadratic = all(q == 2 for q in degrees)
        factors = ci_report["witnesses"].get("poincare_factors_over_z")
        supersolvable = ci_report["supersolvable"]
        block = {
            "degrees": degrees,
            "ordering": list(search.ordering.sequence),
            "all_quadratic": quadratic,
            "poincare_factors_over_z": factors,
            "supersolvable": supersolvable,
            "two_formal": two_formal,
            "koszul": quadratic,  # for a CI quotient, Koszul iff every degree is 2
        }
        verdicts = [quadratic, factors, two_formal] + ([supersolvable] if supersolvable is not None else [])
        if len(set(verdicts)) != 1:
            raise InvariantViolation(f"CI equivalence block disagrees: {block}")
        out["ci_block"] = block
    return out
