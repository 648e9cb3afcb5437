"""Triangulated graphs: polygon triangulations and maximal planar graphs.

Faces are supplied as edge-index triples and validated combinatorially; no
embedding is computed.  Dual graphs join faces sharing an edge.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .broken import (
    LabeledIntersectionGraph,
    Ordering,
    is_simple_family,
    max_disjoint_broken_circuits,
    ordering_from_family,
)
from .classification import complete_intersection_check
from .errors import CapExceeded, InvalidInput, InvariantViolation
from .invariants import WilfBounds, chromatic_polynomials, wilf_bound_coefficients
from .matroid import SimpleGraph, cycle_matroid, elements_of, to_mask
from .poly import T, IntPolynomial

FOREST_CAP = 14


@dataclass(frozen=True)
class Triangulation:
    """``outer`` lists the boundary edges of a polygon; ``None`` means maximal planar."""

    graph: SimpleGraph
    faces: tuple[tuple[int, int, int], ...]
    outer: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "faces", tuple(tuple(sorted(f)) for f in self.faces))
        if self.outer is not None:
            object.__setattr__(self, "outer", tuple(sorted(self.outer)))
        self.validate()

    @property
    def vertices(self) -> int:
        return self.graph.vertices

    @property
    def is_polygon(self) -> bool:
        return self.outer is not None

    def face_masks(self) -> list[int]:
        return [to_mask(f) for f in self.faces]

    def validate(self) -> None:
        g, ell = self.graph, self.graph.vertices
        m = g.n_edges
        for f in self.faces:
            if len(set(f)) != 3 or not all(1 <= e <= m for e in f):
                raise InvalidInput(f"face {f} must be three distinct edge indices")
            ends = Counter(v for e in f for v in g.edges[e - 1])
            if len(ends) != 3 or set(ends.values()) != {2}:
                raise InvalidInput(f"face {f} is not a triangle")
        use = Counter(e for f in self.faces for e in f)
        if self.outer is None:
            if ell < 3 or len(self.faces) != 2 * ell - 4:
                raise InvalidInput(f"maximal planar graph on {ell} vertices needs {2 * ell - 4} faces")
            if m != 3 * ell - 6 or any(use[e] != 2 for e in range(1, m + 1)):
                raise InvalidInput("every edge must lie in exactly two faces")
        else:
            if m != 2 * ell - 3 or len(self.faces) != ell - 2:
                raise InvalidInput(f"polygon triangulation on {ell} vertices needs {2 * ell - 3} edges "
                                   f"and {ell - 2} triangles")
            outer = set(self.outer)
            if len(outer) != ell:
                raise InvalidInput("boundary must have one edge per vertex")
            deg = Counter(v for e in outer for v in g.edges[e - 1])
            if len(deg) != ell or set(deg.values()) != {2}:
                raise InvalidInput("boundary edges do not form a cycle through every vertex")
            if not SimpleGraph(ell, [g.edges[e - 1] for e in sorted(outer)]).is_connected():
                raise InvalidInput("boundary is not a single cycle")
            for e in range(1, m + 1):
                if use[e] != (1 if e in outer else 2):
                    raise InvalidInput(f"edge {e} lies in {use[e]} triangles")

    def dual_adjacency(self) -> list[set[int]]:
        """Faces (by index) adjacent when they share an edge; identical faces collapse."""
        faces = [set(f) for f in self.faces]
        adj = [set() for _ in faces]
        for i, j in itertools.combinations(range(len(faces)), 2):
            if faces[i] & faces[j] and faces[i] != faces[j]:
                adj[i].add(j)
                adj[j].add(i)
        return adj


def from_vertex_faces(vertices: int, faces: Sequence[Sequence[int]],
                      boundary: Sequence[int] | None = None) -> Triangulation:
    """Build from vertex triples; ``boundary`` is the polygon's vertex cycle."""
    edges: list[tuple[int, int]] = []
    index: dict[frozenset[int], int] = {}

    def edge(u: int, v: int) -> int:
        key = frozenset((u, v))
        if key not in index:
            edges.append((min(u, v), max(u, v)))
            index[key] = len(edges)
        return index[key]

    if boundary is not None:
        for i, u in enumerate(boundary):
            edge(u, boundary[(i + 1) % len(boundary)])
    tri = [tuple(edge(a, b) for a, b in ((f[0], f[1]), (f[1], f[2]), (f[0], f[2]))) for f in faces]
    outer = None
    if boundary is not None:
        outer = tuple(index[frozenset((u, boundary[(i + 1) % len(boundary)]))] for i, u in enumerate(boundary))
    return Triangulation(SimpleGraph(vertices, edges), tuple(tri), outer)


def polygon_fan(ell: int) -> Triangulation:
    if ell < 3:
        raise InvalidInput("a polygon needs at least 3 vertices")
    return from_vertex_faces(ell, [(1, k, k + 1) for k in range(2, ell)], list(range(1, ell + 1)))


def random_polygon_triangulation(ell: int, rng: random.Random) -> Triangulation:
    """Grow from a triangle by repeatedly gluing an ear onto a random boundary edge."""
    if ell < 3:
        raise InvalidInput("a polygon needs at least 3 vertices")
    boundary = [1, 2, 3]
    faces = [(1, 2, 3)]
    for w in range(4, ell + 1):
        i = rng.randrange(len(boundary))
        u, v = boundary[i], boundary[(i + 1) % len(boundary)]
        faces.append((u, v, w))
        boundary.insert(i + 1, w)
    return from_vertex_faces(ell, faces, boundary)


def tetrahedron() -> Triangulation:
    return from_vertex_faces(4, list(itertools.combinations(range(1, 5), 3)))


def octahedron() -> Triangulation:
    # poles 1 and 6, equator 2-3-4-5
    ring = [2, 3, 4, 5]
    faces = [(p, ring[i], ring[(i + 1) % 4]) for p in (1, 6) for i in range(4)]
    return from_vertex_faces(6, faces)


def icosahedron() -> Triangulation:
    # top 1, upper ring 2..6, lower ring 7..11, bottom 12
    up = [2, 3, 4, 5, 6]
    lo = [7, 8, 9, 10, 11]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces += [(1, up[i], up[j]), (up[i], up[j], lo[i]), (up[j], lo[i], lo[j]), (12, lo[i], lo[j])]
    return from_vertex_faces(12, faces)


# -- polygon triangulations ---------------------------------------------------

@dataclass(frozen=True)
class TriangulationResult:
    ordering: Ordering
    chromatic: IntPolynomial
    ci: bool
    degrees: tuple[int, ...]


def expected_polygon_chromatic(ell: int) -> IntPolynomial:
    return T * (T - IntPolynomial((1,))) * (T - IntPolynomial((2,))) ** (ell - 2)


def triangulation_analysis(tri: Triangulation) -> TriangulationResult:
    """Ordering from the dual tree of triangles; CI and chromatic formula are asserted."""
    if not tri.is_polygon:
        raise InvalidInput("expected a polygon triangulation")
    family = tri.face_masks()
    if not LabeledIntersectionGraph.of(family).is_tree():
        raise InvalidInput("dual graph of the triangles is not a tree")
    n = tri.graph.n_edges
    order = ordering_from_family([elements_of(f) for f in family], n)
    M = cycle_matroid(tri.graph)
    ci = complete_intersection_check(M, order)
    if not ci.is_ci or any(q != 2 for q in ci.degrees or ()):
        raise InvariantViolation(f"triangulation ordering gives degrees {ci.degrees}")
    pair = chromatic_polynomials(tri.graph, order)
    if not pair.agree:
        raise InvariantViolation("chromatic engines disagree")
    if pair.whitney != expected_polygon_chromatic(tri.vertices):
        raise InvariantViolation(f"chromatic polynomial {pair.whitney} is not t(t-1)(t-2)^(l-2)")
    return TriangulationResult(order, pair.whitney, True, ci.degrees or ())


# -- maximal planar graphs ----------------------------------------------------

def max_induced_forest(adj: Sequence[set[int]]) -> tuple[int, ...]:
    """Largest vertex set inducing a forest; branch and bound, include-first."""
    nv = len(adj)
    best: list[int] = []

    def find(parent: dict[int, int], x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i: int, chosen: list[int], parent: dict[int, int]) -> None:
        nonlocal best
        if len(chosen) + (nv - i) <= len(best):
            return
        if i == nv:
            best = list(chosen)
            return
        roots = {find(parent, j) for j in adj[i] if j in parent}
        links = sum(1 for j in adj[i] if j in parent)
        if links == len(roots):
            p2 = dict(parent)
            p2[i] = i
            for r in roots:
                p2[r] = i
            chosen.append(i)
            rec(i + 1, chosen, p2)
            chosen.pop()
        rec(i + 1, chosen, parent)

    rec(0, [], {})
    return tuple(best)


def _greedy_induced_forest(adj: Sequence[set[int]]) -> tuple[int, ...]:
    chosen: set[int] = set()
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    for v in sorted(range(len(adj)), key=lambda v: len(adj[v])):
        nbrs = [j for j in adj[v] if j in chosen]
        roots = {find(j) for j in nbrs}
        if len(roots) == len(nbrs):
            parent[v] = v
            for r in roots:
                parent[r] = v
            chosen.add(v)
    return tuple(sorted(chosen))


def has_triangle(adj: Sequence[set[int]]) -> bool:
    return any(adj[i] & adj[j] for i in range(len(adj)) for j in adj[i] if j > i)


@dataclass(frozen=True)
class WilfOrdering:
    ordering: Ordering
    forest: tuple[frozenset[int], ...]
    count: int
    required: int
    triangle_free_dual: bool
    small_case: bool
    exact: bool
    best_over_orderings: int | None = None


def wilf_required(ell: int, triangle_free_dual: bool) -> int:
    if ell <= 4:
        return ell - 2
    if triangle_free_dual:
        return ell - 3 + -(-ell // 3)
    return ell - 2 + ell // 4


def wilf_ordering(tri: Triangulation, *, cap: int = FOREST_CAP, allow_greedy: bool = False) -> WilfOrdering:
    """Ordering with many disjoint broken circuits, from a large induced forest of the dual.

    For ℓ in {3, 4} the guarantee is ℓ - 2; it is checked against an
    exhaustive scan of all edge orderings.
    """
    if tri.is_polygon:
        raise InvalidInput("expected a maximal planar triangulation")
    masks = []
    for f in tri.face_masks():
        if f not in masks:
            masks.append(f)
    faces = [set(elements_of(f)) for f in masks]
    adj = [set() for _ in faces]
    for i, j in itertools.combinations(range(len(faces)), 2):
        if faces[i] & faces[j]:
            adj[i].add(j)
            adj[j].add(i)
    ell = tri.vertices
    exact = len(adj) <= cap
    if exact:
        forest = max_induced_forest(adj)
    elif allow_greedy:
        forest = _greedy_induced_forest(adj)
    else:
        raise CapExceeded(f"dual graph has {len(adj)} vertices, above the exact-search cap {cap}")
    family = [masks[i] for i in forest]
    n = tri.graph.n_edges
    order = ordering_from_family([elements_of(f) for f in family], n)
    M = cycle_matroid(tri.graph)
    if not is_simple_family(family, order):
        raise InvariantViolation("forest faces do not give disjoint broken circuits")
    # exact packing is cheap below the cap; past it, report what the forest achieves
    count = max_disjoint_broken_circuits(M, order) if exact else len(family)
    tf = not has_triangle(adj)
    required = wilf_required(ell, tf)
    small = ell <= 4
    best_any = None
    if small:
        best_any = max(max_disjoint_broken_circuits(M, Ordering(p))
                       for p in itertools.permutations(range(1, n + 1)))
        if best_any < required:
            raise InvariantViolation(f"no ordering reaches {required} disjoint broken circuits")
    if exact and count < required:
        raise InvariantViolation(f"only {count} disjoint broken circuits, expected at least {required}")
    return WilfOrdering(order, tuple(frozenset(elements_of(f)) for f in family), count, required,
                        tf, small, exact, best_any)


@dataclass(frozen=True)
class WilfRow:
    p: int
    a: int
    b: int
    b_triangle_free: int | None

    @property
    def slack(self) -> int:
        return self.b - self.a


@dataclass(frozen=True)
class WilfReport:
    vertices: int
    chromatic: IntPolynomial
    rows: tuple[WilfRow, ...]
    bounds: WilfBounds
    triangle_free_bounds: WilfBounds | None

    @property
    def holds(self) -> bool:
        return all(r.a <= r.b and (r.b_triangle_free is None or r.a <= r.b_triangle_free) for r in self.rows)


def wilf_report(tri: Triangulation) -> WilfReport:
    """Compare a_p from χ(G, t) = t^ℓ + Σ (-1)^p a_p t^{ℓ-p} with the coefficient bounds."""
    if tri.is_polygon:
        raise InvalidInput("expected a maximal planar triangulation")
    pair = chromatic_polynomials(tri.graph)
    if not pair.agree:
        raise InvariantViolation("chromatic engines disagree")
    chi = pair.delcon
    ell = tri.vertices
    bounds = wilf_bound_coefficients(ell)
    tf = not has_triangle(tri.dual_adjacency())
    tfb = wilf_bound_coefficients(ell, True) if tf else None
    rows = []
    for p in range(1, ell):
        a = (-1) ** p * chi[ell - p]
        rows.append(WilfRow(p, a, bounds.b[p - 1], tfb.b[p - 1] if tfb else None))
    return WilfReport(ell, chi, tuple(rows), bounds, tfb)
