"""Worked example: the square with three triangular ears under the reverse ordering."""

from bcx.broken import Ordering, face_vectors, minimal_broken_circuits, stanley_reisner_ideal
from bcx.classification import complete_intersection_check
from bcx.corpus import eared_square_graph, eared_square_matroid
from bcx.invariants import chromatic_whitney, poincare_polynomial


def main():
    M = eared_square_matroid()
    order = Ordering.reverse(M.n)
    mins = minimal_broken_circuits(M, order).minimal
    print("minimal broken circuits:", sorted(sorted(b) for b in mins))
    print("Stanley-Reisner generators:", stanley_reisner_ideal(M, order).strings())
    ci = complete_intersection_check(M, order)
    print("complete intersection:", ci.is_ci, "degrees:", sorted(ci.degrees))
    fv = face_vectors(M, order)
    print("f-vector:", list(fv.f))
    print("Poincaré polynomial:", poincare_polynomial(fv).format())
    print("chromatic polynomial:", chromatic_whitney(eared_square_graph(), order).format())


if __name__ == "__main__":
    main()
