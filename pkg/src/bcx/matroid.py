"""Simple matroids on ``[n] = {1, ..., n}`` encoded by their circuits.

Element ``e`` lives at bit ``e - 1`` of a Python int, so every subset
test is a single ``&``.  Ground sets are capped at :data:`MAX_ELEMENTS`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .errors import CapExceeded, InvalidInput, InvariantViolation

MAX_ELEMENTS = 64
VECTOR_CAP = 16


# -- bitset helpers -----------------------------------------------------------

def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def elements_of(mask: int) -> tuple[int, ...]:
    out = []
    e = 1
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def set_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical sort key for subsets: size first, then ascending elements."""
    return popcount(mask), elements_of(mask)


def sorted_masks(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=set_key))


# -- graphs -------------------------------------------------------------------

@dataclass(frozen=True)
class SimpleGraph:
    """Graph on vertices ``1..vertices``; edge ``i`` (1-based) is ``edges[i-1]``."""

    vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for u, v in edges:
            if not (1 <= u <= self.vertices and 1 <= v <= self.vertices):
                raise InvalidInput(f"edge {(u, v)} has a vertex outside 1..{self.vertices}")
            if u == v:
                raise InvalidInput(f"loop at vertex {u}")
            key = frozenset((u, v))
            if key in seen:
                raise InvalidInput(f"parallel edge {(u, v)}")
            seen.add(key)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """vertex -> [(neighbour, 1-based edge index)]"""
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(1, self.vertices + 1)}
        for i, (u, v) in enumerate(self.edges, start=1):
            adj[u].append((v, i))
            adj[v].append((u, i))
        return adj

    def is_connected(self) -> bool:
        if self.vertices == 0:
            return True
        adj = self.adjacency()
        seen = {1}
        stack = [1]
        while stack:
            u = stack.pop()
            for w, _ in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertices


def cycle_edge_sets(graph: SimpleGraph) -> list[int]:
    """Edge masks of all simple cycles, by DFS from each cycle's smallest vertex."""
    adj = graph.adjacency()
    found: set[int] = set()

    def dfs(start: int, u: int, visited: int, emask: int, length: int) -> None:
        for w, e in adj[u]:
            if w == start and length >= 2 and not emask >> (e - 1) & 1:
                found.add(emask | 1 << (e - 1))
            elif w > start and not visited >> w & 1:
                dfs(start, w, visited | 1 << w, emask | 1 << (e - 1), length + 1)

    for s in range(1, graph.vertices + 1):
        dfs(s, s, 1 << s, 0, 0)
    return list(found)


# -- matroids -----------------------------------------------------------------

@dataclass(frozen=True)
class Matroid:
    """A simple matroid given by ground-set size and circuit bitmasks.

    Use the module-level constructors; they validate.  ``circuits`` is kept
    in canonical order (size, then elements).
    """

    n: int
    circuits: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "circuits", sorted_masks(self.circuits))

    # ranks and closures ------------------------------------------------------

    def is_independent(self, mask: int) -> bool:
        return not any(c & mask == c for c in self.circuits)

    def rank_of(self, mask: int) -> int:
        # greedy is exact in a matroid: every maximal independent subset has equal size
        cur = 0
        for e in elements_of(mask):
            cand = cur | 1 << (e - 1)
            if self.is_independent(cand):
                cur = cand
        return popcount(cur)

    @cached_property
    def ground(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def rank(self) -> int:
        return self.rank_of(self.ground)

    def closure_of(self, mask: int) -> int:
        r = self.rank_of(mask)
        out = mask
        for e in range(1, self.n + 1):
            b = 1 << (e - 1)
            if not mask & b and self.rank_of(mask | b) == r:
                out |= b
        return out

    @cached_property
    def coloops(self) -> int:
        covered = 0
        for c in self.circuits:
            covered |= c
        return self.ground & ~covered

    def circuit_sets(self) -> list[frozenset[int]]:
        return [frozenset(elements_of(c)) for c in self.circuits]

    def is_free(self) -> bool:
        return not self.circuits

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<Matroid{label} n={self.n} rank={self.rank} circuits={len(self.circuits)}>"


def _check_family(n: int, masks: Sequence[int]) -> None:
    if not 0 <= n <= MAX_ELEMENTS:
        raise InvalidInput(f"ground set size {n} outside 0..{MAX_ELEMENTS}")
    ground = (1 << n) - 1
    for c in masks:
        if c & ~ground:
            raise InvalidInput(f"circuit {elements_of(c)} uses labels outside 1..{n}")
        if popcount(c) < 3:
            raise InvalidInput(f"circuit {elements_of(c)} has fewer than 3 elements (not simple)")
    for a, b in itertools.combinations(masks, 2):
        if a & b in (a, b):
            raise InvalidInput(f"circuits {elements_of(a)} and {elements_of(b)} are nested")


def check_pairwise_elimination(masks: Sequence[int]) -> tuple[int, int, int] | None:
    """First (C1, C2, e) violating two-circuit elimination, or None."""
    for a, b in itertools.combinations(masks, 2):
        common = a & b
        union = a | b
        for e in elements_of(common):
            target = union & ~(1 << (e - 1))
            if not any(c & target == c for c in masks):
                return a, b, e
    return None


def from_circuits(n: int, circuits: Iterable[Iterable[int]], *, name: str = "",
                  validate_axioms: bool = True) -> Matroid:
    """Matroid from an explicit circuit family (1-based labels).

    Circuit elimination is checked on all pairs only; a family can pass this
    and still fail the axiom on larger configurations.
    """
    masks = []
    for c in circuits:
        c = list(c)
        if len(set(c)) != len(c):
            raise InvalidInput(f"circuit {c} repeats an element")
        if any(not isinstance(e, int) or e < 1 for e in c):
            raise InvalidInput(f"circuit {c} has a non-positive or non-integer label")
        masks.append(to_mask(c))
    if len(set(masks)) != len(masks):
        raise InvalidInput("duplicate circuit in family")
    _check_family(n, masks)
    if validate_axioms:
        bad = check_pairwise_elimination(masks)
        if bad is not None:
            a, b, e = bad
            raise InvalidInput(
                f"elimination fails for {elements_of(a)}, {elements_of(b)} at {e}")
    return Matroid(n, tuple(masks), name)


def uniform(m: int, n: int) -> Matroid:
    """U_{m,n}: circuits are all (m+1)-subsets."""
    if not 2 <= m <= n:
        raise InvalidInput(f"uniform matroid U_{{{m},{n}}} is not simple (need 2 <= m <= n)")
    circuits = [to_mask(c) for c in itertools.combinations(range(1, n + 1), m + 1)]
    return Matroid(n, tuple(circuits), f"U_{m},{n}")


def free(n: int) -> Matroid:
    return Matroid(n, (), f"U_{n},{n}")


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    if m1.n + m2.n > MAX_ELEMENTS:
        raise InvalidInput("direct sum exceeds the bitset width")
    shifted = tuple(c << m1.n for c in m2.circuits)
    name = f"{m1.name}+{m2.name}" if m1.name and m2.name else ""
    return Matroid(m1.n + m2.n, m1.circuits + shifted, name)


def cycle_matroid(graph: SimpleGraph, *, name: str = "") -> Matroid:
    """Graphic matroid: elements are edges (1-based), circuits are cycles."""
    if graph.n_edges > MAX_ELEMENTS:
        raise InvalidInput("too many edges for the bitset width")
    return Matroid(graph.n_edges, tuple(cycle_edge_sets(graph)), name)


def vector_matroid(columns: Sequence[Sequence[object]], *, name: str = "") -> Matroid:
    """Matroid of linear dependencies among exact-rational column vectors.

    Circuits are the minimal dependent column subsets, found level by level;
    a dependent subset containing no smaller circuit is a circuit.
    """
    cols = [[Fraction(x) for x in c] for c in columns]
    n = len(cols)
    if n > VECTOR_CAP:
        raise CapExceeded(f"vector matroid on {n} columns exceeds cap {VECTOR_CAP}")
    for i, c in enumerate(cols, start=1):
        if all(x == 0 for x in c):
            raise InvalidInput(f"column {i} is zero (loop; not simple)")
    for i, j in itertools.combinations(range(n), 2):
        if linalg.column_rank([cols[i], cols[j]]) < 2:
            raise InvalidInput(f"columns {i + 1} and {j + 1} are parallel (not simple)")
    r = linalg.column_rank(cols)
    circuits: list[int] = []
    for k in range(3, r + 2):
        for idx in itertools.combinations(range(n), k):
            m = 0
            for i in idx:
                m |= 1 << i
            if any(c & m == c for c in circuits):
                continue
            if linalg.column_rank([cols[i] for i in idx]) < k:
                circuits.append(m)
    return Matroid(n, tuple(circuits), name)


# -- queries ------------------------------------------------------------------

@dataclass(frozen=True)
class RankInfo:
    rank: int
    independent: bool
    closure: frozenset[int]


def _check_subset(M: Matroid, S: Iterable[int]) -> int:
    S = list(S)
    for e in S:
        if not 1 <= e <= M.n:
            raise InvalidInput(f"element {e} outside 1..{M.n}")
    return to_mask(S)


def rank_query(M: Matroid, S: Iterable[int]) -> RankInfo:
    mask = _check_subset(M, S)
    r = M.rank_of(mask)
    return RankInfo(r, r == popcount(mask), frozenset(elements_of(M.closure_of(mask))))


def eliminate_circuit(M: Matroid, chain: Sequence[Iterable[int]], B: Iterable[int]) -> frozenset[int]:
    """A circuit inside ``(C_1 ∪ ... ∪ C_m) - B`` for a chain with ``|B| = m - 1``.

    Requires ``C_i`` not contained in the union of the earlier members.
    Raises :class:`InvariantViolation` if no such circuit exists, which can
    only happen for a family that is not the circuit set of a matroid.
    """
    masks = [_check_subset(M, c) for c in chain]
    bmask = _check_subset(M, B)
    if not masks:
        raise InvalidInput("empty chain")
    if popcount(bmask) != len(masks) - 1:
        raise InvalidInput(f"|B| must be {len(masks) - 1}")
    circuit_set = set(M.circuits)
    union = 0
    for i, c in enumerate(masks):
        if c not in circuit_set:
            raise InvalidInput(f"{elements_of(c)} is not a circuit")
        if i and c & union == c:
            raise InvalidInput(f"chain member {i + 1} lies inside the earlier union")
        union |= c
    target = union & ~bmask
    for c in M.circuits:
        if c & target == c:
            return frozenset(elements_of(c))
    raise InvariantViolation(f"no circuit inside {elements_of(target)}: circuit family is corrupt")
