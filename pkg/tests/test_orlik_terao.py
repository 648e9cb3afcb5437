import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from bcx.broken import Ordering, stanley_reisner_ideal
from bcx.corpus import eared_square_graph, k4_graph
from bcx.errors import InvalidInput
from bcx.matroid import cycle_matroid, elements_of
from bcx.orlik_terao import (
    Arrangement,
    MonomialOrder,
    boolean,
    boundary,
    braid_arrangement,
    circuit_relation,
    classify_arrangement,
    cone,
    generic,
    graphic_arrangement,
    groebner_verify,
    hilbert_agreement,
    is_generic,
    ot_generators,
    relation_membership_check,
    relation_space,
    two_formal_check,
    underlying_matroid,
)

from conftest import orderings, simple_columns

THREE_LINES = Arrangement.from_columns([(1, 0), (0, 1), (1, 1)], "three-lines")


def sympy_initial_ideal(a, order, kind):
    """Leading monomials of sympy's reduced Gröbner basis, as sorted support tuples."""
    xs = sympy.symbols(f"x1:{a.n + 1}")
    gens = [xs[v - 1] for v in reversed(order.sequence)]
    polys = []
    for _, p in ot_generators(a):
        expr = 0
        for m, c in p.terms:
            term = sympy.Rational(c.numerator, c.denominator)
            for i, e in enumerate(m):
                term *= xs[i] ** e
            expr += term
        polys.append(expr)
    G = sympy.groebner(polys, *gens, order="lex" if kind == "lex" else "grevlex")
    leads = set()
    for g in G.exprs:
        lm = sympy.Poly(g, *gens).monoms(order="lex" if kind == "lex" else "grevlex")[0]
        leads.add(tuple(sorted(xs.index(gens[k]) + 1 for k, e in enumerate(lm) for _ in range(e))))
    return leads


def sr_supports(a, order):
    I = stanley_reisner_ideal(underlying_matroid(a), order)
    return {tuple(i + 1 for i, e in enumerate(g) for _ in range(e)) for g in I.generators}


def test_three_lines_relation_and_generator():
    rel = circuit_relation(THREE_LINES, [1, 2, 3])
    assert rel.format() == "x1 + x2 - x3"
    (C, p), = ot_generators(THREE_LINES)
    assert C == frozenset({1, 2, 3})
    assert dict(p.terms) == {(0, 1, 1): 1, (1, 0, 1): 1, (1, 1, 0): -1}
    assert p.format() == "x2*x3 + x1*x3 - x1*x2"


def test_three_lines_lex_initial():
    gb = groebner_verify(THREE_LINES, Ordering.natural(3), "lex")
    assert gb.is_groebner and gb.matches_stanley_reisner
    assert gb.initial.strings() == ["x2*x3"]


def test_braid_triangle_relation():
    a = braid_arrangement(4)
    M = underlying_matroid(a)
    assert M == cycle_matroid(k4_graph())
    rel = circuit_relation(a, [1, 2, 4])
    assert rel.format() == "x1 - x2 + x4"
    assert rel.holds(a)


def test_relation_space_dimension():
    for a in (THREE_LINES, braid_arrangement(4), generic(3, 5), boolean(3)):
        assert len(relation_space(a)) == a.n - a.r


def test_arrangement_validation():
    with pytest.raises(InvalidInput):
        Arrangement.from_columns([(1, 0), (2, 0), (0, 1)])
    with pytest.raises(InvalidInput):
        Arrangement.from_columns([(0, 0), (0, 1)])
    with pytest.raises(InvalidInput):
        Arrangement.from_columns([(1, 0, 0), (0, 1, 0)])
    with pytest.raises(InvalidInput):
        circuit_relation(braid_arrangement(4), [1, 2, 3, 4, 5])


def test_builders():
    g = generic(3, 5, seed=2)
    assert is_generic(g, 3) and all(len(C) == 4 for C in underlying_matroid(g).circuit_sets())
    c = cone(cone(generic(2, 4)))
    assert (c.r, c.n) == (4, 6)
    assert elements_of(underlying_matroid(c).coloops) == (5, 6)
    fig = graphic_arrangement(eared_square_graph())
    assert underlying_matroid(fig) == cycle_matroid(eared_square_graph())


def test_induced_order_puts_broken_circuit_first():
    order = Ordering((3, 1, 2))
    mo = MonomialOrder.induced(order, "lex")
    assert mo.precedence == (2, 1, 3)
    gb = groebner_verify(THREE_LINES, order, "lex")
    # bc of {1,2,3} under 3 < 1 < 2 drops 3
    assert gb.initial.strings() == ["x1*x2"]
    assert gb.leading_is_broken_circuit


ARRANGEMENTS = [THREE_LINES, generic(2, 4), generic(2, 5), braid_arrangement(4), cone(cone(generic(2, 4)))]


@pytest.mark.parametrize("a", ARRANGEMENTS, ids=lambda a: a.name or "cone2")
@pytest.mark.parametrize("kind", ["lex", "degrevlex"])
def test_initial_ideal_matches_sympy(a, kind):
    rng = random.Random(1)
    for _ in range(2):
        order = Ordering.random(a.n, rng)
        gb = groebner_verify(a, order, kind)
        assert gb.is_groebner and gb.matches_stanley_reisner
        assert sympy_initial_ideal(a, order, kind) == sr_supports(a, order)


@settings(max_examples=25)
@given(simple_columns(max_rank=3, max_n=6, bound=2), st.data())
def test_universal_groebner_basis(cols, data):
    a = Arrangement.from_columns(cols)
    order = data.draw(orderings(a.n))
    kind = data.draw(st.sampled_from(["lex", "degrevlex"]))
    gb = groebner_verify(a, order, kind)
    assert gb.is_groebner and gb.matches_stanley_reisner and gb.leading_is_broken_circuit


@settings(max_examples=15)
@given(simple_columns(max_rank=3, max_n=6, bound=2), st.data())
def test_ci_invariant_under_coordinate_change(cols, data):
    a = Arrangement.from_columns(cols)
    g = data.draw(st.lists(st.lists(st.integers(-2, 2), min_size=a.r, max_size=a.r),
                           min_size=a.r, max_size=a.r))
    try:
        b = a.transform(g)
    except InvalidInput:
        return
    assert underlying_matroid(a) == underlying_matroid(b)
    assert classify_arrangement(a)["ot_complete_intersection"] == classify_arrangement(b)["ot_complete_intersection"]


def test_two_formality():
    assert two_formal_check(braid_arrangement(4))
    assert not two_formal_check(generic(3, 5))
    assert two_formal_check(boolean(3))
    assert two_formal_check(THREE_LINES)


def test_boundary_of_sum_of_relations_in_ideal():
    a = graphic_arrangement(eared_square_graph())
    assert relation_membership_check(a, Ordering.reverse(10), trials=8)


def test_boundary_formula():
    rel = circuit_relation(THREE_LINES, [1, 2, 3])
    p = boundary(rel, 3)
    assert p.degrees() == {2}
    # ∂(r) equals (Π x_j) Σ a_i / x_i over the support
    pt = [Fraction(2), Fraction(3), Fraction(5)]
    value = sum(c * pt[0] ** m[0] * pt[1] ** m[1] * pt[2] ** m[2] for m, c in p.terms)
    assert value == sum(c / pt[i - 1] for i, c in rel.coeffs) * pt[0] * pt[1] * pt[2]


@pytest.mark.parametrize("a", ARRANGEMENTS, ids=lambda a: a.name or "cone2")
def test_hilbert_agreement(a):
    direct, series = hilbert_agreement(a, Ordering.natural(a.n), 6)
    assert direct == series


def test_classify_arrangements():
    k4 = classify_arrangement(braid_arrangement(4))
    assert k4["ot_complete_intersection"] is False and k4["ci_search"] == "proven-none"
    fig = classify_arrangement(graphic_arrangement(eared_square_graph()))
    assert fig["ot_complete_intersection"] is True
    assert fig["ci_block"]["degrees"] == [2, 2, 2, 3]
    assert fig["ci_block"]["all_quadratic"] is False
    tri = classify_arrangement(THREE_LINES)
    assert tri["ci_block"]["all_quadratic"] and tri["ci_block"]["two_formal"]
