import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bcx.broken import Ordering, max_disjoint_broken_circuits
from bcx.errors import CapExceeded, InvalidInput
from bcx.graphs import (
    expected_polygon_chromatic,
    from_vertex_faces,
    has_triangle,
    icosahedron,
    max_induced_forest,
    octahedron,
    polygon_fan,
    random_polygon_triangulation,
    tetrahedron,
    triangulation_analysis,
    wilf_ordering,
    wilf_report,
    wilf_required,
)
from bcx.invariants import chromatic_deletion_contraction
from bcx.matroid import cycle_matroid
from bcx.poly import IntPolynomial

T = IntPolynomial((0, 1))


def brute_max_induced_forest(adj):
    nv = len(adj)
    G = nx.Graph()
    G.add_nodes_from(range(nv))
    G.add_edges_from((i, j) for i in range(nv) for j in adj[i])
    for k in range(nv, -1, -1):
        for S in itertools.combinations(range(nv), k):
            if nx.is_forest(G.subgraph(S)):
                return k
    return 0


def test_square_with_diagonal():
    t = from_vertex_faces(4, [(1, 2, 3), (1, 3, 4)], [1, 2, 3, 4])
    res = triangulation_analysis(t)
    assert res.ci and res.degrees == (2, 2)
    assert res.chromatic == T * (T - IntPolynomial((1,))) * (T - IntPolynomial((2,))) ** 2


def test_single_triangle():
    res = triangulation_analysis(polygon_fan(3))
    assert res.chromatic.format() == "t^3-3t^2+2t"


@pytest.mark.parametrize("ell", range(3, 9))
def test_polygon_formula(ell):
    rng = random.Random(ell)
    for t in [polygon_fan(ell)] + [random_polygon_triangulation(ell, rng) for _ in range(3)]:
        res = triangulation_analysis(t)
        assert res.chromatic == expected_polygon_chromatic(ell)
        assert chromatic_deletion_contraction(t.graph) == res.chromatic
        assert all(q == 2 for q in res.degrees) and len(res.degrees) == ell - 2


def test_triangulation_validation():
    with pytest.raises(InvalidInput):
        from_vertex_faces(4, [(1, 2, 3)], [1, 2, 3, 4])
    with pytest.raises(InvalidInput):
        from_vertex_faces(4, [(1, 2, 3), (1, 2, 4), (1, 3, 4)])
    with pytest.raises(InvalidInput):
        triangulation_analysis(tetrahedron())
    with pytest.raises(InvalidInput):
        wilf_ordering(polygon_fan(5))


def test_dual_graphs():
    assert all(len(n) == 3 for n in octahedron().dual_adjacency())
    assert not has_triangle(octahedron().dual_adjacency())
    assert has_triangle(tetrahedron().dual_adjacency())
    assert len(icosahedron().dual_adjacency()) == 20


@given(st.integers(1, 9).flatmap(
    lambda nv: st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)), max_size=18)
    .map(lambda es: (nv, es))))
def test_max_induced_forest_matches_brute_force(case):
    nv, es = case
    adj = [set() for _ in range(nv)]
    for u, v in es:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    forest = max_induced_forest(adj)
    G = nx.Graph()
    G.add_nodes_from(forest)
    G.add_edges_from((i, j) for i in forest for j in adj[i] if j in forest)
    assert nx.is_forest(G)
    assert len(forest) == brute_max_induced_forest(adj)


def test_tetrahedron_wilf():
    w = wilf_ordering(tetrahedron())
    assert w.small_case and w.required == 2 and w.count >= 2
    # the general bound ℓ-2+⌊ℓ/4⌋ = 3 is out of reach at ℓ = 4 under every ordering
    assert w.best_over_orderings == 2
    rep = wilf_report(tetrahedron())
    assert rep.holds and rep.rows[0].a == 6


def test_octahedron_wilf():
    w = wilf_ordering(octahedron())
    assert w.triangle_free_dual and w.required == 5 and w.count >= 5
    assert len(w.forest) == brute_max_induced_forest(octahedron().dual_adjacency()) == 5
    M = cycle_matroid(octahedron().graph)
    assert max_disjoint_broken_circuits(M, w.ordering) == w.count
    rep = wilf_report(octahedron())
    assert rep.holds
    assert rep.rows[0].a == 12 == rep.rows[0].b_triangle_free
    assert [r.a for r in rep.rows] == [12, 58, 137, 154, 64]


def test_octahedron_chromatic():
    chi = chromatic_deletion_contraction(octahedron().graph)
    # K_{2,2,2}: t(t-1)(t-2)(t^3-9t^2+29t-32)
    assert chi == T * (T - IntPolynomial((1,))) * (T - IntPolynomial((2,))) * IntPolynomial((-32, 29, -9, 1))


def test_icosahedron_cap():
    with pytest.raises(CapExceeded):
        wilf_ordering(icosahedron())
    w = wilf_ordering(icosahedron(), allow_greedy=True)
    assert not w.exact and w.count >= wilf_required(12, False)


def test_required_counts():
    assert [wilf_required(ell, False) for ell in (3, 4, 5, 8)] == [1, 2, 4, 8]
    assert wilf_required(6, True) == 5
