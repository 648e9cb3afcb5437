"""Test and sweep corpora: uniform matroids, direct sums, small connected graphs."""

from __future__ import annotations

import itertools
from functools import lru_cache

import networkx as nx

from .matroid import Matroid, SimpleGraph, cycle_matroid, direct_sum, free, from_circuits, uniform

EARED_SQUARE_CIRCUITS = (
    (1, 2, 8), (3, 4, 9), (5, 6, 10), (7, 8, 9, 10), (1, 2, 7, 9, 10), (3, 4, 7, 8, 10),
    (5, 6, 7, 8, 9), (1, 2, 3, 4, 7, 10), (1, 2, 5, 6, 7, 9), (3, 4, 5, 6, 7, 8), (1, 2, 3, 4, 5, 6, 7),
)

# vertices A..G as 1..7; edge i is element i of the matroid above
EARED_SQUARE_EDGES = ((2, 5), (5, 3), (3, 6), (6, 4), (7, 4), (1, 7), (1, 2), (2, 3), (3, 4), (4, 1))


def eared_square_matroid() -> Matroid:
    return from_circuits(10, EARED_SQUARE_CIRCUITS, name="eared-square")


def eared_square_graph() -> SimpleGraph:
    return SimpleGraph(7, EARED_SQUARE_EDGES)


def k4_graph() -> SimpleGraph:
    return SimpleGraph(4, list(itertools.combinations(range(1, 5), 2)))


def uniform_corpus(max_n: int = 7) -> list[Matroid]:
    return [uniform(m, n) for n in range(2, max_n + 1) for m in range(2, n + 1)]


def direct_sum_corpus(max_n: int = 7, free_sizes: tuple[int, ...] = (1, 2)) -> list[Matroid]:
    out = []
    for M in uniform_corpus(max_n):
        if M.is_free():
            continue
        for k in free_sizes:
            S = direct_sum(M, free(k))
            out.append(Matroid(S.n, S.circuits, f"{M.name}+free{k}"))
    return out


def _to_nx(edges: tuple[tuple[int, int], ...]) -> nx.Graph:
    g = nx.Graph()
    g.add_edges_from(edges)
    return g


@lru_cache(maxsize=None)
def connected_graphs(max_edges: int) -> tuple[SimpleGraph, ...]:
    """All connected simple graphs with 1..max_edges edges, up to isomorphism.

    Grown one edge at a time (pendant edge to a new vertex, or a chord
    between existing vertices), deduplicated by isomorphism inside
    Weisfeiler-Lehman hash buckets.
    """
    out: list[SimpleGraph] = []
    level: list[tuple[int, tuple[tuple[int, int], ...]]] = [(2, ((1, 2),))]
    for _ in range(max_edges):
        out += [SimpleGraph(v, list(es)) for v, es in level]
        buckets: dict[str, list[nx.Graph]] = {}
        nxt: list[tuple[int, tuple[tuple[int, int], ...]]] = []
        for v, es in level:
            present = set(es)
            cands = [(u, v + 1) for u in range(1, v + 1)]
            cands += [p for p in itertools.combinations(range(1, v + 1), 2) if p not in present]
            for e in cands:
                new = tuple(sorted(es + (e,)))
                nv = max(v, e[1])
                g = _to_nx(new)
                h = nx.weisfeiler_lehman_graph_hash(g)
                bucket = buckets.setdefault(h, [])
                if any(nx.is_isomorphic(g, other) for other in bucket):
                    continue
                bucket.append(g)
                nxt.append((nv, new))
        level = nxt
    return tuple(out)


def graphic_corpus(max_edges: int = 7) -> list[Matroid]:
    return [cycle_matroid(g, name=f"graph{i}") for i, g in enumerate(connected_graphs(max_edges))]


def full_corpus(max_n: int = 7, max_edges: int = 7) -> list[Matroid]:
    """Uniform, uniform-plus-free and graphic matroids, plus the eared-square matroid."""
    return uniform_corpus(max_n) + direct_sum_corpus(max_n) + graphic_corpus(max_edges) + [eared_square_matroid()]
