"""Ordering-dependent combinatorics of broken circuits.

Broken circuits, the Stanley-Reisner ideal of the broken circuit complex,
face counting, simple circuit families and their intersection graphs, and
the search for orderings with pairwise disjoint minimal broken circuits.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExhausted, CapExceeded, InvalidInput, InvariantViolation
from .matroid import Matroid, elements_of, popcount, set_key, sorted_masks, to_mask
from .monomials import MonomialIdeal, from_support

DENSE_CAP = 24
DENSE_AUTO_LIMIT = 16
EXHAUSTIVE_LIMIT = 8
FACE_NODE_CAP = 1_000_000


# -- orderings ----------------------------------------------------------------

@dataclass(frozen=True)
class Ordering:
    """A linear order on ``[n]``; ``sequence[0]`` is the smallest element."""

    sequence: tuple[int, ...]

    def __post_init__(self):
        seq = tuple(int(e) for e in self.sequence)
        object.__setattr__(self, "sequence", seq)
        if sorted(seq) != list(range(1, len(seq) + 1)):
            raise InvalidInput(f"ordering {list(seq)} is not a permutation of 1..{len(seq)}")
        pos = [0] * (len(seq) + 1)
        for i, e in enumerate(seq):
            pos[e] = i
        object.__setattr__(self, "_pos", tuple(pos))

    @property
    def n(self) -> int:
        return len(self.sequence)

    @classmethod
    def natural(cls, n: int) -> "Ordering":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def reverse(cls, n: int) -> "Ordering":
        return cls(tuple(range(n, 0, -1)))

    @classmethod
    def parse(cls, text: str) -> "Ordering":
        try:
            return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))
        except ValueError as exc:
            raise InvalidInput(f"cannot parse ordering {text!r}") from exc

    @classmethod
    def random(cls, n: int, rng: random.Random) -> "Ordering":
        seq = list(range(1, n + 1))
        rng.shuffle(seq)
        return cls(tuple(seq))

    def position(self, e: int) -> int:
        return self._pos[e]

    def min_of(self, mask: int) -> int:
        """The ≺-smallest element of a nonempty subset."""
        return min(elements_of(mask), key=self._pos.__getitem__)

    def check(self, n: int) -> None:
        if self.n != n:
            raise InvalidInput(f"ordering has {self.n} elements, matroid has {n}")


def broken_circuit(mask: int, order: Ordering) -> int:
    return mask & ~(1 << (order.min_of(mask) - 1))


def _minimal(masks: Iterable[int]) -> tuple[int, ...]:
    ms = sorted(set(masks), key=popcount)
    out: list[int] = []
    for m in ms:
        if not any(o & m == o for o in out):
            out.append(m)
    return sorted_masks(out)


def minimal_bc_masks(M: Matroid, order: Ordering) -> tuple[int, ...]:
    return _minimal(broken_circuit(c, order) for c in M.circuits)


@dataclass(frozen=True)
class BrokenCircuits:
    all: dict[frozenset[int], frozenset[int]]
    minimal: tuple[frozenset[int], ...]

    def sizes(self) -> list[int]:
        return sorted(len(b) for b in self.minimal)


def minimal_broken_circuits(M: Matroid, order: Ordering) -> BrokenCircuits:
    order.check(M.n)
    every = {frozenset(elements_of(c)): frozenset(elements_of(broken_circuit(c, order)))
             for c in M.circuits}
    minimal = tuple(frozenset(elements_of(b)) for b in minimal_bc_masks(M, order))
    return BrokenCircuits(every, minimal)


def stanley_reisner_ideal(M: Matroid, order: Ordering) -> MonomialIdeal:
    """Minimal squarefree generators are the minimal broken circuit monomials."""
    order.check(M.n)
    gens = [from_support(M.n, elements_of(b)) for b in minimal_bc_masks(M, order)]
    return MonomialIdeal.from_generators(M.n, gens)


def is_generating_set(M: Matroid, order: Ordering, family: Iterable[Iterable[int]]) -> bool:
    """Do the broken circuits of ``family`` include every minimal broken circuit?"""
    bcs = {broken_circuit(to_mask(c), order) for c in family}
    return all(b in bcs for b in minimal_bc_masks(M, order))


# -- faces --------------------------------------------------------------------

@dataclass(frozen=True)
class FaceVectors:
    """``f[i]`` is f_{i-1} (so ``f[0] == 1``); ``h[k]`` is h_k; ``r`` is the rank."""

    f: tuple[int, ...]
    h: tuple[int, ...]
    r: int

    @property
    def n_faces(self) -> int:
        return sum(self.f)


def h_from_f(f: Sequence[int], r: int) -> tuple[int, ...]:
    h = []
    for k in range(r + 1):
        h.append(sum((-1) ** (k - i) * comb(r - i, k - i) * f[i] for i in range(k + 1)))
    return tuple(h)


def f_from_h(h: Sequence[int], r: int) -> tuple[int, ...]:
    return tuple(sum(h[i] * comb(r - i, k - i) for i in range(k + 1)) for k in range(r + 1))


def count_faces_dense(n: int, bcs: Sequence[int]) -> list[int]:
    """Face counts by size, testing every subset of ``[n]`` at once with numpy."""
    if n > DENSE_CAP:
        raise CapExceeded(f"dense face enumeration capped at n={DENSE_CAP}, got {n}")
    masks = np.arange(1 << n, dtype=np.uint64)
    good = np.ones(1 << n, dtype=bool)
    for b in bcs:
        bb = np.uint64(b)
        good &= (masks & bb) != bb
    sizes = np.bitwise_count(masks[good])
    return [int(x) for x in np.bincount(sizes, minlength=n + 1)]


def count_faces_pruned(n: int, bcs: Sequence[int], node_cap: int | None = FACE_NODE_CAP) -> list[int]:
    """Face counts by size via DFS that never extends a non-face.

    Every visited node is a face, so ``node_cap`` bounds the total face count.
    """
    by_top: list[list[int]] = [[] for _ in range(n + 1)]
    for b in bcs:
        by_top[b.bit_length()].append(b)
    counts = [0] * (n + 1)

    seen = 0

    def rec(start: int, mask: int, size: int) -> None:
        nonlocal seen
        counts[size] += 1
        seen += 1
        if node_cap is not None and seen > node_cap:
            raise CapExceeded(f"broken circuit complex has more than {node_cap} faces")
        for e in range(start, n + 1):
            nm = mask | 1 << (e - 1)
            if any(b & nm == b for b in by_top[e]):
                continue
            rec(e + 1, nm, size + 1)

    rec(1, 0, 0)
    return counts


def face_vectors(M: Matroid, order: Ordering, method: str = "auto") -> FaceVectors:
    """f- and h-vector of the broken circuit complex of ``(M, order)``."""
    order.check(M.n)
    bcs = minimal_bc_masks(M, order)
    if method == "auto":
        method = "dense" if M.n <= DENSE_AUTO_LIMIT else "pruned"
    if method == "dense":
        counts = count_faces_dense(M.n, bcs)
    elif method == "pruned":
        counts = count_faces_pruned(M.n, bcs)
    else:
        raise InvalidInput(f"unknown face enumeration method {method!r}")
    r = max(k for k, c in enumerate(counts) if c)
    if r != M.rank:
        raise InvariantViolation(f"complex dimension {r - 1} but matroid rank {M.rank}")
    f = tuple(counts[: r + 1])
    h = h_from_f(f, r)
    if any(x < 0 for x in h):
        raise InvariantViolation(f"negative h-vector {h} for a shellable complex")
    return FaceVectors(f, h, r)


# -- simple families ----------------------------------------------------------

@dataclass(frozen=True)
class LabeledIntersectionGraph:
    """Vertices are circuits; ``edges`` holds ``(i, j, label_mask)`` with i < j."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    @classmethod
    def of(cls, family: Sequence[int]) -> "LabeledIntersectionGraph":
        edges = tuple((i, j, a & b) for (i, a), (j, b)
                      in itertools.combinations(enumerate(family), 2) if a & b)
        return cls(tuple(family), edges)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        adj: list[list[tuple[int, int]]] = [[] for _ in self.vertices]
        for i, j, lab in self.edges:
            adj[i].append((j, lab))
            adj[j].append((i, lab))
        return adj

    def components(self) -> int:
        adj = self.adjacency()
        seen: set[int] = set()
        count = 0
        for s in range(len(self.vertices)):
            if s in seen:
                continue
            count += 1
            stack = [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                for w, _ in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
        return count

    def is_connected(self) -> bool:
        return self.components() <= 1

    def is_forest(self) -> bool:
        return len(self.edges) == len(self.vertices) - self.components()

    def is_tree(self) -> bool:
        return bool(self.vertices) and self.is_connected() and self.is_forest()

    def distinct_label_cycle(self) -> list[int] | None:
        """A cycle (vertex indices) whose edge labels are pairwise distinct, if any."""
        adj = self.adjacency()

        def dfs(start: int, u: int, path: list[int], labels: set[int]) -> list[int] | None:
            for w, lab in adj[u]:
                if lab in labels:
                    continue
                if w == start and len(path) >= 3:
                    return list(path)
                if w > start and w not in path:
                    path.append(w)
                    labels.add(lab)
                    hit = dfs(start, w, path, labels)
                    if hit:
                        return hit
                    path.pop()
                    labels.discard(lab)
            return None

        for s in range(len(self.vertices)):
            hit = dfs(s, s, [s], set())
            if hit:
                return hit
        return None


def _leaf_enumeration(family: Sequence[int]) -> list[int] | None:
    """Indices C_1..C_m with each C_i meeting the earlier union in <= 1 element.

    Peels off, from the back, a member meeting the rest in at most one
    element (the last such in list order), so a family listed in a valid
    order keeps it.  None if peeling gets stuck.
    """
    remaining = list(range(len(family)))
    back: list[int] = []
    while remaining:
        pick = None
        for idx in reversed(remaining):
            rest = 0
            for j in remaining:
                if j != idx:
                    rest |= family[j]
            if popcount(family[idx] & rest) <= 1:
                pick = idx
                break
        if pick is None:
            return None
        remaining.remove(pick)
        back.append(pick)
    return back[::-1]


def is_simple_family(family: Sequence[int], order: Ordering) -> bool:
    bcs = [broken_circuit(c, order) for c in family]
    return all(not a & b for a, b in itertools.combinations(bcs, 2))


@dataclass(frozen=True)
class SimpleSubsetAnalysis:
    simple: bool
    graph: LabeledIntersectionGraph
    is_forest: bool
    is_tree: bool
    has_distinct_label_cycle: bool
    enumeration: tuple[frozenset[int], ...] | None


def simple_subset_analysis(family: Iterable[Iterable[int]], order: Ordering) -> SimpleSubsetAnalysis:
    masks = [to_mask(c) for c in family]
    if not masks:
        raise InvalidInput("family must be nonempty")
    simple = is_simple_family(masks, order)
    g = LabeledIntersectionGraph.of(masks)
    tree = g.is_tree()
    cycle = g.distinct_label_cycle()
    enum = _leaf_enumeration(masks)
    if simple:
        if cycle is not None or enum is None:
            raise InvariantViolation("simple family with a distinct-label cycle")
        no_triple = all(not a & b & c for a, b, c in itertools.combinations(masks, 3))
        if tree != (g.is_connected() and no_triple):
            raise InvariantViolation("tree test disagrees with connected + no common triple")
    enumeration = None if enum is None else tuple(frozenset(elements_of(masks[i])) for i in enum)
    return SimpleSubsetAnalysis(simple, g, g.is_forest(), tree, cycle is not None, enumeration)


def core_mask(family: Sequence[int]) -> int:
    union = 0
    shared = 0
    for a in family:
        union |= a
    for a, b in itertools.combinations(family, 2):
        shared |= a & b
    return union & ~shared


def core_set(family: Iterable[Iterable[int]]) -> frozenset[int]:
    """Union of the family minus every pairwise intersection."""
    masks = [to_mask(c) for c in family]
    if not masks:
        raise InvalidInput("family must be nonempty")
    return frozenset(elements_of(core_mask(masks)))


def _ordering_from_masks(family: Sequence[int], n: int) -> Ordering:
    for a, b in itertools.combinations(family, 2):
        if popcount(a & b) > 1:
            raise InvalidInput(f"{elements_of(a)} and {elements_of(b)} share more than one element")
    g = LabeledIntersectionGraph.of(family)
    cycle = g.distinct_label_cycle()
    if cycle is not None:
        raise InvalidInput("intersection graph has a cycle with distinct labels: "
                           + " - ".join(str(elements_of(family[i])) for i in cycle))
    enum = _leaf_enumeration(family)
    if enum is None:
        raise InvariantViolation("no valid enumeration although the preconditions hold")
    seq: list[int] = []
    used = 0
    for i in enum:
        block = family[i] & ~used
        seq.extend(elements_of(block))
        used |= family[i]
    seq.extend(e for e in range(1, n + 1) if not used >> (e - 1) & 1)
    order = Ordering(tuple(seq))
    if not is_simple_family(family, order):
        raise InvariantViolation("constructed ordering does not make the family simple")
    return order


def ordering_from_family(family: Iterable[Iterable[int]], n: int) -> Ordering:
    """Ordering of ``[n]`` under which ``family`` has pairwise disjoint broken circuits.

    Members are enumerated so each meets the earlier ones in at most one
    element; each member's new elements form a block, blocks are placed in
    enumeration order (ascending inside a block), leftovers go last.
    """
    masks = [to_mask(c) for c in family]
    if any(m >> n for m in masks):
        raise InvalidInput(f"family uses labels outside 1..{n}")
    return _ordering_from_masks(masks, n)


# -- searching for CI orderings ------------------------------------------------

@dataclass(frozen=True)
class CIOrderingResult:
    """``status`` is ``found``, ``proven-none`` or ``exhausted``."""

    status: str
    ordering: Ordering | None
    minimal: tuple[frozenset[int], ...] | None
    method: str
    examined: int


def _ci_positions(by_size: Sequence[int], pos: Sequence[int]) -> bool:
    """CI test in position space: element e becomes bit pos[e], so min is the low bit.

    ``by_size`` must be sorted by cardinality; a broken circuit is minimal
    iff it contains no earlier minimal one, and the first minimal one that
    meets an earlier one refutes disjointness.
    """
    mins: list[int] = []
    acc = 0
    for c in by_size:
        m = 0
        while c:
            low = c & -c
            m |= 1 << pos[low.bit_length()]
            c ^= low
        b = m ^ (m & -m)
        if any(x & b == x for x in mins):
            continue
        if acc & b:
            return False
        mins.append(b)
        acc |= b
    return True


def ci_under(circuits: Sequence[int], order: Ordering) -> bool:
    """Minimal broken circuits under ``order`` are pairwise disjoint."""
    pos = [0] + [order.position(e) for e in range(1, order.n + 1)]
    return _ci_positions(sorted(circuits, key=popcount), pos)


def _scan_prefix(args: tuple[tuple[int, ...], int, int, int | None]) -> tuple[tuple[int, ...] | None, int]:
    circuits, n, first, budget = args
    by_size = sorted(circuits, key=popcount)
    rest = [e for e in range(1, n + 1) if e != first]
    pos = [0] * (n + 1)
    pos[first] = 0
    examined = 0
    for tail in itertools.permutations(rest):
        if budget is not None and examined >= budget:
            return None, -1
        examined += 1
        for i, e in enumerate(tail, start=1):
            pos[e] = i
        if _ci_positions(by_size, pos):
            return (first,) + tail, examined
    return None, examined


def _permutation_search(M: Matroid, budget: int | None, workers: int) -> CIOrderingResult:
    n = M.n
    jobs = [(M.circuits, n, first, budget) for first in range(1, n + 1)]
    if workers > 1 and budget is None:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_prefix, jobs))
        examined = sum(max(x, 0) for _, x in results)
        for seq, _ in results:
            if seq is not None:
                order = Ordering(seq)
                mins = tuple(frozenset(elements_of(b)) for b in minimal_bc_masks(M, order))
                return CIOrderingResult("found", order, mins, "permutations", examined)
        return CIOrderingResult("proven-none", None, None, "permutations", examined)
    examined = 0
    for job in jobs:
        left = None if budget is None else budget - examined
        if left is not None and left <= 0:
            return CIOrderingResult("exhausted", None, None, "permutations", examined)
        seq, count = _scan_prefix(job[:3] + (left,))
        if count < 0:
            return CIOrderingResult("exhausted", None, None, "permutations", budget or 0)
        examined += count
        if seq is not None:
            order = Ordering(seq)
            mins = tuple(frozenset(elements_of(b)) for b in minimal_bc_masks(M, order))
            return CIOrderingResult("found", order, mins, "permutations", examined)
    return CIOrderingResult("proven-none", None, None, "permutations", examined)


def _family_search(M: Matroid, budget: int | None) -> CIOrderingResult:
    # A CI ordering exists iff some family of n - r circuits, pairwise meeting in
    # <= 1 element with no distinct-label cycle, yields one through
    # ordering_from_family; so finishing the enumeration proves nonexistence.
    h = M.n - M.rank
    circuits = M.circuits
    examined = 0
    chosen: list[int] = []

    def rec(start: int) -> Ordering | None:
        nonlocal examined
        # every node of the search tree counts against the budget
        if budget is not None and examined >= budget:
            raise BudgetExhausted
        examined += 1
        if len(chosen) == h:
            if LabeledIntersectionGraph.of(chosen).distinct_label_cycle() is not None:
                return None
            order = _ordering_from_masks(chosen, M.n)
            return order if ci_under(circuits, order) else None
        for i in range(start, len(circuits) - (h - len(chosen)) + 1):
            c = circuits[i]
            if any(popcount(c & d) > 1 for d in chosen):
                continue
            chosen.append(c)
            hit = rec(i + 1)
            chosen.pop()
            if hit is not None:
                return hit
        return None

    try:
        order = rec(0)
    except BudgetExhausted:
        return CIOrderingResult("exhausted", None, None, "families", examined)
    if order is None:
        return CIOrderingResult("proven-none", None, None, "families", examined)
    mins = tuple(frozenset(elements_of(b)) for b in minimal_bc_masks(M, order))
    return CIOrderingResult("found", order, mins, "families", examined)


def find_ci_ordering(M: Matroid, budget: int | None = None, *, workers: int = 1,
                     exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> CIOrderingResult:
    """Search for an ordering with pairwise disjoint minimal broken circuits.

    For ``n <= exhaustive_limit`` permutations are scanned in lexicographic
    order, so the first hit is the lexicographically smallest.  Larger
    ground sets use the circuit-family search.  ``budget`` bounds the number
    of permutations, or of partial and complete families, examined.
    """
    if M.is_free():
        return CIOrderingResult("found", Ordering.natural(M.n), (), "trivial", 0)
    if M.n <= exhaustive_limit:
        return _permutation_search(M, budget, workers)
    return _family_search(M, budget)


def max_disjoint_broken_circuits(M: Matroid, order: Ordering) -> int:
    """Largest number of pairwise disjoint broken circuits (exact set packing)."""
    bcs = sorted({broken_circuit(c, order) for c in M.circuits}, key=set_key)
    best = 0

    def rec(i: int, used: int, count: int) -> None:
        nonlocal best
        best = max(best, count)
        free_elems = M.n - popcount(used)
        if count + free_elems // 2 <= best:
            return
        for j in range(i, len(bcs)):
            if not bcs[j] & used:
                rec(j + 1, used | bcs[j], count + 1)

    rec(0, 0, 0)
    return best
