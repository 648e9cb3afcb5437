import itertools
import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from bcx.broken import (
    LabeledIntersectionGraph,
    Ordering,
    ci_under,
    core_set,
    count_faces_dense,
    count_faces_pruned,
    f_from_h,
    face_vectors,
    find_ci_ordering,
    h_from_f,
    is_generating_set,
    max_disjoint_broken_circuits,
    minimal_bc_masks,
    minimal_broken_circuits,
    ordering_from_family,
    simple_subset_analysis,
    stanley_reisner_ideal,
)
from bcx.corpus import eared_square_matroid, full_corpus, k4_graph
from bcx.errors import CapExceeded, InvalidInput
from bcx.matroid import cycle_matroid, direct_sum, free, to_mask, uniform

from conftest import orderings, small_graphs


def slow_minimal_bcs(M, order):
    pos = {e: i for i, e in enumerate(order.sequence)}
    bcs = set()
    for C in M.circuit_sets():
        bcs.add(C - {min(C, key=pos.get)})
    return {b for b in bcs if not any(o < b for o in bcs)}


def slow_f_vector(M, order):
    bcs = slow_minimal_bcs(M, order)
    f = [0] * (M.n + 1)
    for k in range(M.n + 1):
        for S in itertools.combinations(range(1, M.n + 1), k):
            S = set(S)
            if not any(b <= S for b in bcs):
                f[k] += 1
    return tuple(x for x in f if x)


def slow_is_ci(M, order):
    bcs = list(slow_minimal_bcs(M, order))
    return all(not a & b for a, b in itertools.combinations(bcs, 2))


CORPUS = full_corpus(6, 6)


def test_eared_square_reverse_ordering(eared):
    order = Ordering.reverse(10)
    bc = minimal_broken_circuits(eared, order)
    assert set(bc.minimal) == {frozenset({1, 2}), frozenset({3, 4}), frozenset({5, 6}), frozenset({7, 8, 9})}
    assert stanley_reisner_ideal(eared, order).strings() == ["x1*x2", "x3*x4", "x5*x6", "x7*x8*x9"]
    assert bc.all[frozenset({1, 2, 8})] == frozenset({1, 2})


def test_eared_square_generating_set(eared):
    order = Ordering.reverse(10)
    assert is_generating_set(eared, order, [[1, 2, 8], [3, 4, 9], [5, 6, 10], [7, 8, 9, 10]])
    assert not is_generating_set(eared, order, [[1, 2, 8], [3, 4, 9]])


def test_ordering_validation():
    with pytest.raises(InvalidInput):
        Ordering((1, 1, 2))
    with pytest.raises(InvalidInput):
        Ordering.parse("1,x")
    with pytest.raises(InvalidInput):
        face_vectors(uniform(2, 3), Ordering.natural(4))


@given(small_graphs(7), st.data())
def test_minimal_bcs_match_slow_definition(g, data):
    M = cycle_matroid(g)
    order = data.draw(orderings(M.n))
    assert set(minimal_broken_circuits(M, order).minimal) == slow_minimal_bcs(M, order)


@given(small_graphs(7), st.data())
def test_face_counts_three_ways(g, data):
    M = cycle_matroid(g)
    order = data.draw(orderings(M.n))
    bcs = minimal_bc_masks(M, order)
    dense = count_faces_dense(M.n, bcs)
    assert dense == count_faces_pruned(M.n, bcs)
    assert face_vectors(M, order).f == slow_f_vector(M, order)


@pytest.mark.parametrize("M", [uniform(3, 6), uniform(2, 5), cycle_matroid(k4_graph(), name="K4"),
                               eared_square_matroid()], ids=lambda M: M.name)
def test_f_vector_ordering_invariant(M):
    rng = random.Random(11)
    base = face_vectors(M, Ordering.natural(M.n))
    for _ in range(25):
        assert face_vectors(M, Ordering.random(M.n, rng)) == base


def test_f_vector_invariant_over_corpus():
    rng = random.Random(5)
    for M in CORPUS:
        fs = {face_vectors(M, Ordering.random(M.n, rng)).f for _ in range(20)}
        assert len(fs) == 1, M


@given(st.lists(st.integers(0, 50), min_size=1, max_size=8))
def test_f_h_roundtrip(f):
    r = len(f) - 1
    assert f_from_h(h_from_f(f, r), r) == tuple(f)


@given(small_graphs(7), st.data())
def test_h_vector_nonnegative(g, data):
    M = cycle_matroid(g)
    fv = face_vectors(M, data.draw(orderings(M.n)))
    assert all(x >= 0 for x in fv.h)
    assert sum(fv.h) == fv.f[-1]


@given(small_graphs(8), st.data())
def test_fast_ci_matches_slow_definition(g, data):
    M = cycle_matroid(g)
    order = data.draw(orderings(M.n))
    assert ci_under(M.circuits, order) == slow_is_ci(M, order)


def test_search_methods_agree_on_small_corpus():
    from bcx.broken import _family_search, _permutation_search

    for M in CORPUS:
        if M.is_free() or M.n > 8:
            continue
        a = _permutation_search(M, None, 1)
        b = _family_search(M, None)
        assert a.status == b.status, M
        for res in (a, b):
            if res.ordering is not None:
                assert slow_is_ci(M, res.ordering)


def test_permutation_search_is_lex_smallest():
    M = uniform(2, 3)
    res = find_ci_ordering(M)
    first = next(Ordering(p) for p in itertools.permutations(range(1, 4)) if slow_is_ci(M, Ordering(p)))
    assert res.ordering == first


def test_search_budget():
    res = find_ci_ordering(uniform(3, 6), budget=3)
    assert res.status == "exhausted"
    assert find_ci_ordering(uniform(3, 6)).status == "proven-none"
    assert find_ci_ordering(free(3)).status == "found"


def test_ordering_from_eared_square_family(eared):
    family = [[1, 2, 8], [3, 4, 9], [5, 6, 10], [7, 8, 9, 10]]
    order = ordering_from_family(family, 10)
    assert ci_under(eared.circuits, order)
    assert core_set(family) == frozenset({1, 2, 3, 4, 5, 6, 7})
    an = simple_subset_analysis(family, order)
    assert an.simple and an.is_tree and not an.has_distinct_label_cycle


@given(small_graphs(7), st.data())
def test_ordering_from_family_output_is_simple(g, data):
    M = cycle_matroid(g)
    assume(len(M.circuits) >= 2)
    family = data.draw(st.lists(st.sampled_from(M.circuit_sets()), min_size=1, max_size=4, unique=True))
    try:
        order = ordering_from_family(family, M.n)
    except InvalidInput:
        masks = [to_mask(c) for c in family]
        crowded = any(len(a & b) > 1 for a, b in itertools.combinations(family, 2))
        assert crowded or LabeledIntersectionGraph.of(masks).distinct_label_cycle() is not None
        return
    pos = {e: i for i, e in enumerate(order.sequence)}
    bcs = [C - {min(C, key=pos.get)} for C in family]
    assert all(not a & b for a, b in itertools.combinations(bcs, 2))


def test_distinct_label_cycle_rejected():
    # three members meeting pairwise in distinct single elements
    with pytest.raises(InvalidInput):
        ordering_from_family([[1, 2, 3], [3, 4, 5], [5, 6, 1]], 6)
    with pytest.raises(InvalidInput):
        ordering_from_family([[1, 2, 3], [1, 2, 4]], 4)


def test_leaf_enumeration_property():
    # every member meets the union of the earlier ones in at most one element
    family = [[1, 2, 8], [3, 4, 9], [5, 6, 10], [7, 8, 9, 10]]
    an = simple_subset_analysis(family, ordering_from_family(family, 10))
    seen = set()
    for C in an.enumeration:
        assert len(C & seen) <= 1
        seen |= C


def test_max_disjoint_broken_circuits(eared):
    assert max_disjoint_broken_circuits(eared, Ordering.reverse(10)) == 4
    M = direct_sum(uniform(2, 3), uniform(2, 3))
    assert max_disjoint_broken_circuits(M, Ordering.natural(6)) == 2


def test_pruned_enumeration_cap():
    with pytest.raises(CapExceeded):
        count_faces_pruned(22, [], node_cap=1000)
    with pytest.raises(CapExceeded):
        count_faces_dense(30, [])
