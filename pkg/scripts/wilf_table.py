"""Coefficient bounds and disjoint broken circuits for small sphere triangulations."""

import argparse

from bcx.graphs import icosahedron, octahedron, tetrahedron, wilf_ordering, wilf_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--greedy", action="store_true", help="include the icosahedron via the greedy forest")
    args = ap.parse_args()
    shapes = [("tetrahedron", tetrahedron()), ("octahedron", octahedron())]
    for name, t in shapes:
        rep = wilf_report(t)
        print(f"{name}: holds={rep.holds}")
        for r in rep.rows:
            print(f"  a_{r.p} = {r.a}  b = {r.b}  b_tf = {r.b_triangle_free}")
        w = wilf_ordering(t)
        print(f"  disjoint broken circuits: {w.count} (required {w.required})")
    if args.greedy:
        w = wilf_ordering(icosahedron(), allow_greedy=True)
        print(f"icosahedron (greedy): {w.count} disjoint broken circuits, required {w.required}")


if __name__ == "__main__":
    main()
