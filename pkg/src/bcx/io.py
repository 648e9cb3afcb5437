"""JSON file formats for matroids, graphs, triangulations, matrices and orderings."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .broken import Ordering
from .errors import InvalidInput
from .graphs import Triangulation
from .matroid import Matroid, SimpleGraph, from_circuits
from .orlik_terao import Arrangement


def load(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from exc


def dumps(data: Any) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save(path: str | Path, data: Any) -> None:
    Path(path).write_text(dumps(data))


def _require(data: Any, keys: tuple[str, ...], what: str) -> dict:
    if not isinstance(data, dict) or any(k not in data for k in keys):
        raise InvalidInput(f"{what} file needs keys {list(keys)}")
    return data


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidInput(f"{what} must be an integer, got {x!r}")
    return x


# -- matroids -----------------------------------------------------------------

def matroid_from_json(data: Any) -> Matroid:
    d = _require(data, ("n", "circuits"), "matroid")
    n = _int(d["n"], "n")
    circuits = d["circuits"]
    if not isinstance(circuits, list):
        raise InvalidInput("circuits must be a list")
    return from_circuits(n, [[_int(e, "element") for e in c] for c in circuits])


def matroid_to_json(M: Matroid) -> dict:
    return {"n": M.n, "circuits": [sorted(c) for c in M.circuit_sets()]}


# -- graphs and triangulations --------------------------------------------------

def graph_from_json(data: Any) -> SimpleGraph:
    d = _require(data, ("vertices", "edges"), "graph")
    edges = d["edges"]
    if not isinstance(edges, list) or any(not isinstance(e, list) or len(e) != 2 for e in edges):
        raise InvalidInput("edges must be a list of [u, v] pairs")
    return SimpleGraph(_int(d["vertices"], "vertices"), [(_int(u, "vertex"), _int(v, "vertex")) for u, v in edges])


def triangulation_from_json(data: Any) -> Triangulation | None:
    """A triangulation when ``faces`` is present, otherwise None."""
    if not isinstance(data, dict) or "faces" not in data:
        return None
    g = graph_from_json(data)
    faces = data["faces"]
    if not isinstance(faces, list) or any(not isinstance(f, list) or len(f) != 3 for f in faces):
        raise InvalidInput("faces must be a list of edge-index triples")
    outer = data.get("outer")
    if outer is not None:
        outer = tuple(_int(e, "edge") for e in outer)
    return Triangulation(g, tuple(tuple(_int(e, "edge") for e in f) for f in faces), outer)


def graph_to_json(g: SimpleGraph) -> dict:
    return {"vertices": g.vertices, "edges": [list(e) for e in g.edges]}


def triangulation_to_json(t: Triangulation) -> dict:
    out = graph_to_json(t.graph)
    out["faces"] = [list(f) for f in t.faces]
    if t.outer is not None:
        out["outer"] = list(t.outer)
    return out


# -- matrices and arrangements ------------------------------------------------

def parse_rational(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise InvalidInput(f"bad rational {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"bad rational {x!r}") from exc
    raise InvalidInput(f"rationals must be strings like '3/4', got {x!r}")


def matrix_from_json(data: Any) -> list[list[Fraction]]:
    d = _require(data, ("rows", "cols", "entries"), "matrix")
    rows, cols = _int(d["rows"], "rows"), _int(d["cols"], "cols")
    entries = d["entries"]
    if not isinstance(entries, list) or len(entries) != rows or any(
            not isinstance(r, list) or len(r) != cols for r in entries):
        raise InvalidInput(f"entries must be {rows} rows of {cols} values")
    return [[parse_rational(x) for x in r] for r in entries]


def arrangement_from_json(data: Any) -> Arrangement:
    return Arrangement.from_matrix(matrix_from_json(data))


def _rational_text(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def arrangement_to_json(a: Arrangement) -> dict:
    m = a.matrix()
    return {"rows": a.r, "cols": a.n, "entries": [[_rational_text(x) for x in row] for row in m]}


# -- orderings ----------------------------------------------------------------

def ordering_from_json(data: Any) -> Ordering:
    if not isinstance(data, list):
        raise InvalidInput("ordering must be a JSON array")
    return Ordering(tuple(_int(x, "element") for x in data))


def ordering_to_json(order: Ordering) -> list[int]:
    return list(order.sequence)


def parse_ordering_arg(text: str) -> Ordering:
    """``"10,9,8"`` or a JSON array, or a path to a file holding a JSON array."""
    text = text.strip()
    if text.startswith("["):
        try:
            return ordering_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"cannot parse ordering {text!r}") from exc
    p = Path(text)
    if not text[0].isdigit() and p.exists():
        return ordering_from_json(load(p))
    return Ordering.parse(text)
