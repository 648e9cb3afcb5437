"""Extremal properties of the Stanley-Reisner ideal of a broken circuit complex.

Each check runs two independent routes where one exists (a Hilbert-function
test against a structural test, the disjointness criterion against the tree
description of the circuits, a modular-chain search against the quadratic
degree criterion) and raises :class:`InvariantViolation` if they disagree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterator, Sequence

from .broken import (
    CIOrderingResult,
    LabeledIntersectionGraph,
    Ordering,
    broken_circuit,
    core_mask,
    face_vectors,
    find_ci_ordering,
    minimal_bc_masks,
    stanley_reisner_ideal,
)
from .errors import BudgetExhausted, CapExceeded, InvalidInput, InvariantViolation
from .invariants import ci_poincare_formula, hilbert_series_and_function, poincare_polynomial
from .matroid import Matroid, elements_of, popcount, to_mask
from .monomials import Monomial, MonomialIdeal, coprime, format_monomial, gcd, mul, quotient
from .poly import binom

SUPERSOLVABLE_CAP = 12
GORENSTEIN_MAX_GENERATORS = 9


def _sets(masks: Sequence[int]) -> list[list[int]]:
    return [list(elements_of(m)) for m in masks]


# -- linear resolution --------------------------------------------------------

@dataclass(frozen=True)
class LinearResolution:
    """``p`` is set when the ideal has a p-linear resolution."""

    p: int | None
    candidate_p: int
    codim: int
    hilbert_value: int
    hilbert_expected: int
    structural: bool
    coloops: frozenset[int]

    @property
    def hilbert_test(self) -> bool:
        return self.hilbert_value == self.hilbert_expected


def linear_resolution_check(M: Matroid, order: Ordering) -> LinearResolution:
    """Decide p-linearity twice: by H(I, p) and by the uniform-plus-coloops shape."""
    if M.is_free():
        raise InvalidInput("free matroid: the ideal is zero and linearity is vacuous")
    order.check(M.n)
    p = min(popcount(c) for c in M.circuits) - 1
    h = M.n - M.rank
    hd = hilbert_series_and_function(face_vectors(M, order), M.n)
    value = hd.ideal(p)
    expected = binom(p + h - 1, p)

    coloops = M.coloops
    rest = M.ground & ~coloops
    structural = 2 <= p <= M.rank and popcount(coloops) == M.rank - p
    if structural:
        want = {to_mask(c) for c in itertools.combinations(elements_of(rest), p + 1)}
        structural = want == set(M.circuits)

    if (value == expected) != structural:
        raise InvariantViolation(
            f"Hilbert test ({value} vs {expected}) disagrees with structural test ({structural})")
    return LinearResolution(p if structural else None, p, h, value, expected, structural,
                            frozenset(elements_of(coloops)))


def linear_f_vector(n: int, r: int, p: int) -> tuple[int, ...]:
    """f-vector forced by a p-linear resolution: Σ_{i<p} C(n-r+i-1, i) C(r-i, k-i)."""
    return tuple(sum(binom(n - r + i - 1, i) * binom(r - i, k - i) for i in range(p))
                 for k in range(r + 1))


def linear_h_vector(n: int, r: int, p: int) -> tuple[int, ...]:
    return tuple(binom(n - r + k - 1, k) if k < p else 0 for k in range(r + 1))


# -- complete intersection ----------------------------------------------------

def tree_subfamilies(family: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every nonempty subfamily whose intersection graph is a tree."""
    for k in range(1, len(family) + 1):
        for sub in itertools.combinations(family, k):
            if k == 1 or LabeledIntersectionGraph.of(sub).is_tree():
                yield sub


def tree_cores(family: Sequence[int]) -> set[int]:
    return {core_mask(sub) for sub in tree_subfamilies(family)}


@dataclass(frozen=True)
class CompleteIntersection:
    degrees: tuple[int, ...] | None
    family: tuple[frozenset[int], ...] | None
    tree_certificate: bool | None

    @property
    def is_ci(self) -> bool:
        return self.degrees is not None


def complete_intersection_check(M: Matroid, order: Ordering) -> CompleteIntersection:
    """CI iff minimal broken circuits are pairwise disjoint; certified by tree cores.

    When CI, the circuits whose broken circuits are minimal form a simple
    family whose tree subfamilies must have cores exactly the circuits.
    """
    order.check(M.n)
    mins = minimal_bc_masks(M, order)
    acc = 0
    for b in mins:
        if acc & b:
            return CompleteIntersection(None, None, None)
        acc |= b
    family = []
    for b in mins:
        owners = [c for c in M.circuits if broken_circuit(c, order) == b]
        if len(owners) != 1:
            raise InvariantViolation(f"minimal broken circuit {elements_of(b)} has {len(owners)} circuits")
        family.append(owners[0])
    cores = tree_cores(family)
    if cores != set(M.circuits):
        raise InvariantViolation("disjoint minimal broken circuits but tree cores miss the circuits")
    degrees = tuple(sorted(popcount(b) for b in mins))
    return CompleteIntersection(degrees, tuple(frozenset(elements_of(c)) for c in family), True)


def simple_tree_family_search(M: Matroid, order: Ordering, budget: int | None = None) -> tuple[int, ...] | None:
    """Independent search for a simple family whose tree cores are exactly the circuits.

    Backtracks over circuits with pairwise disjoint broken circuits, pruning
    as soon as some tree subfamily has a core that is not a circuit.
    """
    circuits = M.circuits
    circuit_set = set(circuits)
    target = len(circuit_set)
    bcs = [broken_circuit(c, order) for c in circuits]
    chosen: list[int] = []
    examined = 0

    def new_cores(c: int) -> set[int] | None:
        out = set()
        for k in range(len(chosen) + 1):
            for sub in itertools.combinations(chosen, k):
                fam = sub + (c,)
                if k and not LabeledIntersectionGraph.of(fam).is_tree():
                    continue
                core = core_mask(fam)
                if core not in circuit_set:
                    return None
                out.add(core)
        return out

    def rec(start: int, used_bc: int, cores: set[int]) -> tuple[int, ...] | None:
        nonlocal examined
        if len(cores) == target:
            return tuple(chosen)
        for i in range(start, len(circuits)):
            if used_bc & bcs[i]:
                continue
            examined += 1
            if budget is not None and examined > budget:
                raise BudgetExhausted("simple-family search budget exhausted")
            extra = new_cores(circuits[i])
            if extra is None:
                continue
            chosen.append(circuits[i])
            hit = rec(i + 1, used_bc | bcs[i], cores | extra)
            chosen.pop()
            if hit is not None:
                return hit
        return None

    if not circuits:
        return ()
    return rec(0, 0, set())


# -- supersolvability ---------------------------------------------------------

@dataclass(frozen=True)
class Supersolvability:
    verdict: bool
    chain: tuple[frozenset[int], ...] | None
    method: str
    flats: int = 0


class _RankCache:
    def __init__(self, M: Matroid):
        self.M = M
        self.cache: dict[int, int] = {}

    def __call__(self, mask: int) -> int:
        r = self.cache.get(mask)
        if r is None:
            r = self.cache[mask] = self.M.rank_of(mask)
        return r

    def closure(self, mask: int) -> int:
        r = self(mask)
        out = mask
        for e in range(self.M.n):
            b = 1 << e
            if not mask & b and self(mask | b) == r:
                out |= b
        return out


def flats_by_rank(M: Matroid) -> list[list[int]]:
    rank = _RankCache(M)
    levels = [[rank.closure(0)]]
    for _ in range(M.rank):
        nxt: set[int] = set()
        for F in levels[-1]:
            for e in range(M.n):
                if not F >> e & 1:
                    nxt.add(rank.closure(F | 1 << e))
        levels.append(sorted(nxt))
    return levels


def modular_chain(M: Matroid) -> tuple[tuple[int, ...] | None, int]:
    """A maximal chain of modular flats, or None; also the number of flats."""
    rank = _RankCache(M)
    levels = flats_by_rank(M)
    all_flats = [F for lvl in levels for F in lvl]
    modular_memo: dict[int, bool] = {}

    def modular(X: int) -> bool:
        hit = modular_memo.get(X)
        if hit is None:
            rx = rank(X)
            hit = all(rx + rank(Y) == rank(X | Y) + rank(X & Y) for Y in all_flats)
            modular_memo[X] = hit
        return hit

    def rec(i: int, chain: list[int]) -> tuple[int, ...] | None:
        if i == M.rank:
            return tuple(chain)
        for F in levels[i + 1]:
            if F & chain[-1] == chain[-1] and modular(F):
                chain.append(F)
                hit = rec(i + 1, chain)
                if hit:
                    return hit
                chain.pop()
        return None

    return rec(0, [levels[0][0]]), len(all_flats)


def supersolvable_check(M: Matroid, order: Ordering | None = None, *,
                        cap: int = SUPERSOLVABLE_CAP, budget: int | None = None) -> Supersolvability:
    """Supersolvability by modular-chain search, cross-checked on CI inputs.

    When the ideal is a complete intersection (under ``order``, or under an
    ordering found by search), the verdict must equal "all minimal broken
    circuits have size 2".
    """
    ci_degrees = None
    if order is not None:
        ci = complete_intersection_check(M, order)
        ci_degrees = ci.degrees
    elif M.n > cap:
        res = find_ci_ordering(M, budget)
        if res.status == "found":
            ci_degrees = tuple(sorted(len(b) for b in res.minimal or ()))
    fast = None if ci_degrees is None else all(q == 2 for q in ci_degrees)

    if M.n <= cap:
        chain, nflats = modular_chain(M)
        brute = chain is not None
        if fast is not None and fast != brute:
            raise InvariantViolation(
                f"modular chain search says {brute} but minimal broken circuit sizes {ci_degrees}")
        witness = None if chain is None else tuple(frozenset(elements_of(F)) for F in chain)
        method = "modular-chain" + ("+ci-degrees" if fast is not None else "")
        return Supersolvability(brute, witness, method, nflats)
    if fast is None:
        raise CapExceeded(f"n={M.n} above brute-force cap {cap} and no CI ordering available")
    return Supersolvability(fast, None, "ci-degrees")


# -- Gorenstein pattern in codimension 3 ---------------------------------------

@dataclass(frozen=True)
class GorensteinVerdict:
    """``kind`` is ``complete_intersection``, ``gorenstein_pattern`` or ``neither``."""

    kind: str
    m: int
    u: tuple[Monomial, ...] | None = None

    def u_strings(self) -> list[str] | None:
        return None if self.u is None else [format_monomial(x) for x in self.u]


def _pattern_search(gens: Sequence[Monomial], s: int) -> tuple[Monomial, ...] | None:
    """Cyclic arrangements of ``gens`` (first one fixed), pruned by the peeled u's.

    Placing w after v fixes u = v / gcd(v, w); a unit, a u sharing a
    variable with an earlier one, or a finished window whose product is not
    its generator kills the branch.
    """
    m = len(gens)
    first = gens[0]
    # each u_i sits in exactly s consecutive generators with its full exponent
    for k in range(len(first)):
        exps = [g[k] for g in gens if g[k]]
        if exps and (len(exps) != s or len(set(exps)) != 1):
            return None

    def window_ok(cycle: list[Monomial], us: list[Monomial]) -> bool:
        j = len(us) - s
        if j < 0:
            return True
        prod = us[j]
        for x in us[j + 1:]:
            prod = mul(prod, x)
        return prod == cycle[j]

    def close(cycle: list[Monomial], us: list[Monomial]) -> tuple[Monomial, ...] | None:
        u_last = quotient(cycle[-1], gcd(cycle[-1], first))
        if sum(u_last) == 0 or not all(coprime(u_last, x) for x in us):
            return None
        u = us + [u_last]
        for i in range(m):
            prod = u[i]
            for j in range(1, s):
                prod = mul(prod, u[(i + j) % m])
            if prod != cycle[i]:
                return None
        return tuple(u)

    def rec(cycle: list[Monomial], us: list[Monomial], rest: list[Monomial]) -> tuple[Monomial, ...] | None:
        if not rest:
            return close(cycle, us)
        v = cycle[-1]
        for k, w in enumerate(rest):
            u = quotient(v, gcd(v, w))
            if sum(u) == 0 or not all(coprime(u, x) for x in us):
                continue
            if not window_ok(cycle, us + [u]):
                continue
            hit = rec(cycle + [w], us + [u], rest[:k] + rest[k + 1:])
            if hit is not None:
                return hit
        return None

    return rec([first], [], list(gens[1:]))


def gorenstein_codim3_check(I: MonomialIdeal, *, max_generators: int = GORENSTEIN_MAX_GENERATORS) -> GorensteinVerdict:
    """Match a codimension-3 monomial ideal against the cyclic generator pattern.

    The pattern: odd m, pairwise coprime u_1..u_m, generators
    v_i = u_i u_{i+1} ... u_{i+s-1} (indices mod m, s = (m-1)/2).  Candidate
    u's are peeled off as v_i / gcd(v_i, v_{i+1}) over cyclic arrangements
    of the generators.
    """
    if not I.minimal:
        raise InvalidInput("generating set is not minimal")
    c = I.codim()
    if c != 3:
        raise InvalidInput(f"ideal has codimension {c}, not 3")
    gens = list(I.generators)
    m = len(gens)
    if m == 3:
        if all(coprime(a, b) for a, b in itertools.combinations(gens, 2)):
            return GorensteinVerdict("complete_intersection", 3, tuple(gens))
        return GorensteinVerdict("neither", 3)
    if m % 2 == 0:
        return GorensteinVerdict("neither", m)
    if m > max_generators:
        raise CapExceeded(f"{m} generators exceeds the pattern search cap {max_generators}")
    u = _pattern_search(gens, (m - 1) // 2)
    if u is not None:
        return GorensteinVerdict("gorenstein_pattern", m, u)
    return GorensteinVerdict("neither", m)


# -- aggregate report ---------------------------------------------------------

@dataclass
class ClassificationReport:
    """Aggregated verdicts with the orderings and families that witness them."""

    n: int
    rank: int
    ordering: list[int]
    minimal_broken_circuits: list[list[int]]
    stanley_reisner: list[str]
    f_vector: list[int]
    h_vector: list[int]
    poincare: list[str]
    linear_resolution: int | None
    complete_intersection: list[int] | None
    ci_any_ordering: str
    ci_ordering: list[int] | None
    supersolvable: bool | None
    supersolvable_chain: list[list[int]] | None
    gorenstein_codim3: str
    witnesses: dict[str, Any] = field(default_factory=dict)

    def check(self) -> None:
        if self.complete_intersection is not None:
            if len(self.complete_intersection) != self.n - self.rank:
                raise InvariantViolation("CI generator count differs from codimension")
            if sum(self.complete_intersection) != sum(len(b) for b in self.minimal_broken_circuits):
                raise InvariantViolation("CI degrees do not sum to the minimal broken circuit sizes")

    def to_json(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "rank": self.rank,
            "ordering": self.ordering,
            "minimal_broken_circuits": self.minimal_broken_circuits,
            "stanley_reisner": self.stanley_reisner,
            "f_vector": self.f_vector,
            "h_vector": self.h_vector,
            "poincare": self.poincare,
            "linear_resolution": self.linear_resolution,
            "complete_intersection": self.complete_intersection,
            "ci": self.complete_intersection is not None,
            "degrees": self.complete_intersection,
            "ci_any_ordering": self.ci_any_ordering,
            "ci_ordering": self.ci_ordering,
            "supersolvable": self.supersolvable,
            "supersolvable_chain": self.supersolvable_chain,
            "gorenstein_codim3": self.gorenstein_codim3,
            "witnesses": self.witnesses,
        }


def classify_matroid(M: Matroid, order: Ordering | None = None, *, budget: int | None = None,
                     find_ordering: bool = False, workers: int = 1) -> ClassificationReport:
    """Run every check on ``(M, order)``.

    With ``find_ordering`` the ordering is replaced by the one found by the
    CI-ordering search when one exists.  An exhausted budget propagates when
    the search was asked for and is reported as "undetermined" otherwise.
    """
    search: CIOrderingResult | None = None
    if find_ordering or order is None:
        search = find_ci_ordering(M, budget, workers=workers)
        if find_ordering and search.status == "exhausted":
            raise BudgetExhausted(f"CI-ordering search stopped after {search.examined} candidates")
    if order is None:
        order = search.ordering if search is not None and search.ordering else Ordering.natural(M.n)
    elif find_ordering and search is not None and search.ordering is not None:
        order = search.ordering
    order.check(M.n)

    mins = minimal_bc_masks(M, order)
    fv = face_vectors(M, order)
    pi = poincare_polynomial(fv)
    ideal = stanley_reisner_ideal(M, order)
    witnesses: dict[str, Any] = {}

    lin = None
    if not M.is_free():
        lr = linear_resolution_check(M, order)
        lin = lr.p
        witnesses["linear_resolution"] = {
            "candidate_p": lr.candidate_p, "hilbert_value": lr.hilbert_value,
            "hilbert_expected": lr.hilbert_expected, "coloops": sorted(lr.coloops)}

    ci = complete_intersection_check(M, order)
    if ci.is_ci:
        formula = ci_poincare_formula(M.n, ci.degrees or ())
        if formula.poly != pi:
            raise InvariantViolation("CI product formula disagrees with face enumeration")
        witnesses["ci_family"] = [sorted(c) for c in ci.family or ()]
        witnesses["poincare_factors_over_z"] = formula.factors_over_z

    if search is None:
        ci_any = "found" if ci.is_ci else "not-searched"
    else:
        ci_any = search.status
        witnesses["ci_search"] = {"method": search.method, "examined": search.examined}

    try:
        ss = supersolvable_check(M, order, budget=budget)
        supersolvable, chain = ss.verdict, ss.chain
        witnesses["supersolvable_method"] = ss.method
    except CapExceeded:
        supersolvable, chain = None, None

    gor = "not-applicable"
    if not ideal.is_zero() and ideal.codim() == 3:
        try:
            v = gorenstein_codim3_check(ideal)
            gor = v.kind
            if v.u is not None:
                witnesses["gorenstein_u"] = v.u_strings()
        except CapExceeded:
            gor = "undetermined"

    report = ClassificationReport(
        n=M.n,
        rank=M.rank,
        ordering=list(order.sequence),
        minimal_broken_circuits=_sets(mins),
        stanley_reisner=ideal.strings(),
        f_vector=list(fv.f),
        h_vector=list(fv.h),
        poincare=pi.to_json(),
        linear_resolution=lin,
        complete_intersection=list(ci.degrees) if ci.degrees is not None else None,
        ci_any_ordering=ci_any,
        ci_ordering=(list(search.ordering.sequence) if search is not None and search.ordering
                     else list(order.sequence) if ci.is_ci else None),
        supersolvable=supersolvable,
        supersolvable_chain=None if chain is None else [sorted(F) for F in chain],
        gorenstein_codim3=gor,
        witnesses=witnesses,
    )
    report.check()
    return report
