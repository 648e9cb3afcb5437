"""End-to-end acceptance checks, one per criterion, each under a wall-clock limit.

Every check prints a single PASS/FAIL line with its runtime.  Run with
``pytest tests/test_acceptance.py`` or directly as a script.
"""

import itertools
import math
import random
import sys
import time

import pytest

from bcx.broken import (
    Ordering,
    face_vectors,
    find_ci_ordering,
    minimal_broken_circuits,
    stanley_reisner_ideal,
)
from bcx.classification import (
    complete_intersection_check,
    gorenstein_codim3_check,
    linear_resolution_check,
    modular_chain,
    simple_tree_family_search,
)
from bcx.corpus import (
    connected_graphs,
    direct_sum_corpus,
    eared_square_graph,
    eared_square_matroid,
    full_corpus,
    graphic_corpus,
    uniform_corpus,
)
from bcx.graphs import (
    expected_polygon_chromatic,
    octahedron,
    polygon_fan,
    random_polygon_triangulation,
    tetrahedron,
    triangulation_analysis,
    wilf_ordering,
    wilf_report,
)
from bcx.invariants import (
    chromatic_deletion_contraction,
    chromatic_whitney,
    ci_poincare_formula,
    poincare_polynomial,
)
from bcx.matroid import direct_sum, free, uniform
from bcx.monomials import MonomialIdeal
from bcx.orlik_terao import (
    Arrangement,
    braid_arrangement,
    classify_arrangement,
    cone,
    generic,
    graphic_arrangement,
    groebner_verify,
    two_formal_check,
    underlying_matroid,
)
from bcx.poly import IntPolynomial
from bcx.verify import SWEEP_GORENSTEIN_CAP

SEED = 7


def _orderings(n, count, rng):
    if math.factorial(n) <= count:
        return [Ordering(p) for p in itertools.permutations(range(1, n + 1))]
    return [Ordering.random(n, rng) for _ in range(count)]


def _disjoint(sets):
    return all(not a & b for a, b in itertools.combinations(sets, 2))


def c1_eared_square():
    M = eared_square_matroid()
    order = Ordering.reverse(10)
    mins = set(minimal_broken_circuits(M, order).minimal)
    assert mins == {frozenset({1, 2}), frozenset({3, 4}), frozenset({5, 6}), frozenset({7, 8, 9})}
    assert stanley_reisner_ideal(M, order).strings() == ["x1*x2", "x3*x4", "x5*x6", "x7*x8*x9"]
    ci = complete_intersection_check(M, order)
    assert ci.is_ci and sorted(ci.degrees) == [2, 2, 2, 3]
    t1 = IntPolynomial((1, 1))
    expected = t1 * IntPolynomial((1, 2)) ** 3 * IntPolynomial((1, 3, 3))
    assert poincare_polynomial(face_vectors(M, order)) == expected


def c2_whitney():
    graphs = connected_graphs(8)
    # connected graphs by edge count, 1..8 edges
    counts = [sum(1 for g in graphs if g.n_edges == m) for m in range(1, 9)]
    assert counts == [1, 1, 3, 5, 12, 30, 79, 227]
    rng = random.Random(SEED)
    for g in graphs:
        dc = chromatic_deletion_contraction(g)
        for _ in range(3):
            assert chromatic_whitney(g, Ordering.random(g.n_edges, rng)) == dc, g


def c3_triangulations():
    rng = random.Random(SEED)
    for ell in range(3, 9):
        for t in [polygon_fan(ell)] + [random_polygon_triangulation(ell, rng) for _ in range(4)]:
            res = triangulation_analysis(t)
            assert res.chromatic == expected_polygon_chromatic(ell)
            assert chromatic_deletion_contraction(t.graph) == expected_polygon_chromatic(ell)
            assert res.ci and all(q == 2 for q in res.degrees)


def c4_groebner():
    arrangements = [
        Arrangement.from_columns([(1, 0), (0, 1), (1, 1)]),
        generic(2, 4, SEED),
        generic(2, 5, SEED),
        braid_arrangement(4),
        cone(cone(generic(2, 4, SEED))),
    ]
    rng = random.Random(SEED)
    for a in arrangements:
        M = underlying_matroid(a)
        for _ in range(3):
            order = Ordering.random(a.n, rng)
            for kind in ("lex", "degrevlex"):
                gb = groebner_verify(a, order, kind, M)
                assert gb.is_groebner and gb.matches_stanley_reisner, (a.name, order, kind)


def c5_linear_resolution():
    for k in (0, 1, 2):
        M = uniform(2, 4) if k == 0 else direct_sum(uniform(2, 4), free(k))
        lr = linear_resolution_check(M, Ordering.natural(M.n))
        assert lr.p == 2 and lr.hilbert_value == 3 == math.comb(3, 2)
    rng = random.Random(SEED)
    corpus = uniform_corpus(7) + graphic_corpus(7) + direct_sum_corpus(7)
    for M in corpus:
        if M.is_free():
            continue
        for order in _orderings(M.n, 5, rng):
            lr = linear_resolution_check(M, order)  # raises if the two tests disagree
            assert lr.structural == lr.hilbert_test


def c6_ci_equivalence():
    rng = random.Random(SEED)
    for M in full_corpus(7, 7):
        for order in _orderings(M.n, 100, rng):
            ci = complete_intersection_check(M, order)
            assert ci.is_ci == (simple_tree_family_search(M, order) is not None), (M, order)
            if ci.is_ci:
                formula = ci_poincare_formula(M.n, ci.degrees)
                assert poincare_polynomial(face_vectors(M, order)) == formula.poly
                assert formula.factors_over_z == all(q == 2 for q in ci.degrees)


def c7_supersolvable():
    checked = 0
    for M in full_corpus(7, 7):
        if M.n > 10:
            continue
        res = find_ci_ordering(M)
        if res.ordering is None:
            continue
        chain, _ = modular_chain(M)
        assert (chain is not None) == all(len(b) == 2 for b in res.minimal), M
        checked += 1
    assert checked > 0


def c8_gorenstein():
    five = MonomialIdeal.parse(5, ["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x1"])
    v = gorenstein_codim3_check(five)
    assert v.kind == "gorenstein_pattern" and v.m == 5
    rng = random.Random(SEED)
    seen = 0
    for M in full_corpus(7, 7):
        if M.n - M.rank != 3:
            continue
        for order in _orderings(M.n, 10, rng):
            I = stanley_reisner_ideal(M, order)
            assert I.codim() == 3
            verdict = gorenstein_codim3_check(I, max_generators=SWEEP_GORENSTEIN_CAP)
            assert verdict.kind != "gorenstein_pattern", (M, order)
            assert (verdict.kind == "complete_intersection") == I.is_complete_intersection()
            seen += 1
    assert seen > 0


def c9_wilf():
    for t in (tetrahedron(), octahedron()):
        rep = wilf_report(t)
        assert rep.holds
    octa = wilf_report(octahedron())
    assert octa.rows[0].a == 12 and octa.rows[0].b_triangle_free == 12
    w = wilf_ordering(octahedron())
    assert w.count >= 5


def c10_orlik_terao():
    braid = braid_arrangement(4)
    M = underlying_matroid(braid)
    for p in itertools.permutations(range(1, 7)):
        mins = minimal_broken_circuits(M, Ordering(p)).minimal
        assert not _disjoint(mins)
    assert classify_arrangement(braid)["ot_complete_intersection"] is False
    fig = classify_arrangement(graphic_arrangement(eared_square_graph()))
    assert fig["ot_complete_intersection"] is True
    assert two_formal_check(braid)
    assert not two_formal_check(generic(3, 5, SEED))


CRITERIA = [
    (1, "eared-square broken circuits, ideal, CI degrees and Poincaré polynomial", 1, c1_eared_square),
    (2, "Whitney vs deletion-contraction on connected graphs with <= 8 edges", 60, c2_whitney),
    (3, "polygon triangulation chromatic formula and CI, l = 3..8", 10, c3_triangulations),
    (4, "Orlik-Terao circuit generators form a Gröbner basis with broken-circuit initial ideal", 30,
     c4_groebner),
    (5, "linear resolution of U_{2,4} (+ free) and structural/Hilbert agreement", 60, c5_linear_resolution),
    (6, "disjoint minimal broken circuits vs simple tree family, product formula and factorization over the corpus", 120,
     c6_ci_equivalence),
    (7, "modular-chain supersolvability vs quadratic CI degrees", 120, c7_supersolvable),
    (8, "codimension-3 Gorenstein pattern", 60, c8_gorenstein),
    (9, "Wilf coefficient bounds and disjoint broken circuits on tetrahedron/octahedron", 10, c9_wilf),
    (10, "Orlik-Terao CI for K4-braid and eared-square, 2-formality", 30, c10_orlik_terao),
]


def run_criterion(num, title, limit, fn):
    start = time.perf_counter()
    error = None
    try:
        fn()
    except Exception as exc:  # reported, then re-raised by the caller
        error = exc
    elapsed = time.perf_counter() - start
    ok = error is None and elapsed < limit
    status = "PASS" if ok else "FAIL"
    detail = "" if error is None else f" [{type(error).__name__}: {error}]"
    line = f"criterion {num:>2}: {status}  {elapsed:7.2f}s (limit {limit}s)  {title}{detail}"
    return ok, elapsed, error, line


@pytest.mark.parametrize("num,title,limit,fn", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(num, title, limit, fn, capsys):
    ok, elapsed, error, line = run_criterion(num, title, limit, fn)
    with capsys.disabled():
        print("\n" + line)
    if error is not None:
        raise error
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for r in results:
        print(r[3])
    sys.exit(0 if all(r[0] for r in results) else 1)
