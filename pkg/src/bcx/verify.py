"""Property sweeps over the built-in corpora.

Every check takes a JSON-able payload and raises on failure, so a failing
payload written to disk can be replayed verbatim with :func:`replay`.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Iterator

from . import io
from .broken import Ordering, face_vectors, find_ci_ordering, stanley_reisner_ideal
from .classification import (
    complete_intersection_check,
    gorenstein_codim3_check,
    linear_f_vector,
    linear_h_vector,
    linear_resolution_check,
    simple_tree_family_search,
    supersolvable_check,
)
from .corpus import connected_graphs, eared_square_graph, full_corpus
from .errors import InvalidInput, InvariantViolation
from .graphs import (
    octahedron,
    polygon_fan,
    random_polygon_triangulation,
    tetrahedron,
    triangulation_analysis,
    wilf_ordering,
    wilf_report,
)
from .invariants import (
    chromatic_deletion_contraction,
    chromatic_whitney,
    ci_poincare_formula,
    poincare_polynomial,
)
from .matroid import Matroid
from .monomials import MonomialIdeal
from .orlik_terao import (
    Arrangement,
    braid_arrangement,
    cone,
    generic,
    graphic_arrangement,
    groebner_verify,
    hilbert_agreement,
)

log = logging.getLogger(__name__)

SWEEP_GORENSTEIN_CAP = 41


def _fail(msg: str) -> None:
    raise InvariantViolation(msg)


def _orderings(n: int, count: int, rng: random.Random) -> list[Ordering]:
    """``count`` random orderings, or all of them when there are fewer."""
    if math.factorial(n) <= count:
        return [Ordering(p) for p in itertools.permutations(range(1, n + 1))]
    return [Ordering.random(n, rng) for _ in range(count)]


# -- checks -------------------------------------------------------------------

def check_whitney(p: dict) -> None:
    g = io.graph_from_json(p["graph"])
    order = io.ordering_from_json(p["ordering"])
    w, d = chromatic_whitney(g, order), chromatic_deletion_contraction(g)
    if w != d:
        _fail(f"Whitney {w} != deletion-contraction {d}")


def check_groebner(p: dict) -> None:
    a = io.arrangement_from_json(p["arrangement"])
    order = io.ordering_from_json(p["ordering"])
    gb = groebner_verify(a, order, p["order"])
    if not gb.is_groebner:
        _fail(f"S-polynomial of {gb.failing_pair} does not reduce to zero")
    if not gb.matches_stanley_reisner:
        _fail(f"initial ideal {gb.initial} differs from the Stanley-Reisner ideal")
    if not gb.leading_is_broken_circuit:
        _fail("a leading monomial is not the broken-circuit monomial")


def check_ci_equivalence(p: dict) -> None:
    M = io.matroid_from_json(p["matroid"])
    order = io.ordering_from_json(p["ordering"])
    ci = complete_intersection_check(M, order)
    family = simple_tree_family_search(M, order)
    if ci.is_ci != (family is not None):
        _fail(f"disjointness says {ci.is_ci}, simple tree-family search found {family}")
    if ci.is_ci:
        pi = poincare_polynomial(face_vectors(M, order))
        formula = ci_poincare_formula(M.n, ci.degrees or ())
        if pi != formula.poly:
            _fail(f"π = {pi} but product formula gives {formula.poly}")
        if formula.factors_over_z != formula.all_quadratic:
            _fail(f"factorization over Z is {formula.factors_over_z} with degrees {ci.degrees}")


def check_linear_resolution(p: dict) -> None:
    M = io.matroid_from_json(p["matroid"])
    order = io.ordering_from_json(p["ordering"])
    lr = linear_resolution_check(M, order)
    if lr.p is not None:
        fv = face_vectors(M, order)
        if fv.f != linear_f_vector(M.n, M.rank, lr.p) or fv.h != linear_h_vector(M.n, M.rank, lr.p):
            _fail(f"face vectors {fv.f}/{fv.h} differ from the linear-resolution formulas")


def check_supersolvable(p: dict) -> None:
    M = io.matroid_from_json(p["matroid"])
    res = find_ci_ordering(M)
    if res.ordering is None:
        return
    supersolvable_check(M, res.ordering)  # raises if the two routes disagree


def check_gorenstein(p: dict) -> None:
    if "ideal" in p:
        I = MonomialIdeal.parse(p["ideal"]["n"], p["ideal"]["generators"], minimalize_input=False)
        v = gorenstein_codim3_check(I)
        if v.kind != p["expect"]:
            _fail(f"expected {p['expect']}, got {v.kind}")
        return
    M = io.matroid_from_json(p["matroid"])
    order = io.ordering_from_json(p["ordering"])
    I = stanley_reisner_ideal(M, order)
    if I.codim() != M.n - M.rank:
        _fail(f"codimension {I.codim()} differs from n - r = {M.n - M.rank}")
    v = gorenstein_codim3_check(I, max_generators=SWEEP_GORENSTEIN_CAP)
    if v.kind == "gorenstein_pattern":
        _fail(f"broken circuit ideal {I} matches the Gorenstein pattern without being CI")
    if (v.kind == "complete_intersection") != I.is_complete_intersection():
        _fail("CI verdicts disagree")


def check_hilbert(p: dict) -> None:
    a = io.arrangement_from_json(p["arrangement"])
    order = io.ordering_from_json(p["ordering"])
    direct, series = hilbert_agreement(a, order, p.get("degree", 8))
    if direct != series:
        _fail(f"standard monomials {direct} vs π(t/(1-t)) {series}")


def check_wilf(p: dict) -> None:
    t = io.triangulation_from_json(p["triangulation"])
    rep = wilf_report(t)
    if not rep.holds:
        _fail(f"coefficient bound fails: {rep.rows}")
    wilf_ordering(t)


def check_triangulation(p: dict) -> None:
    t = io.triangulation_from_json(p["triangulation"])
    triangulation_analysis(t)


CHECKS: dict[str, Callable[[dict], None]] = {
    "whitney": check_whitney,
    "groebner": check_groebner,
    "ci-equivalence": check_ci_equivalence,
    "linear-resolution": check_linear_resolution,
    "supersolvable": check_supersolvable,
    "gorenstein": check_gorenstein,
    "hilbert": check_hilbert,
    "wilf": check_wilf,
    "triangulation": check_triangulation,
}


# -- payload generators -------------------------------------------------------

@dataclass
class VerifyConfig:
    """``size`` bounds graph corpora by edge count; ``orderings`` is per instance."""

    suite: str = "all"
    seed: int = 0
    size: int | None = None
    orderings: int | None = None
    dump_dir: Path | None = None
    max_failures: int = 10


def _matroid_payloads(cfg: VerifyConfig, default_orderings: int, max_n: int | None = None,
                      keep: Callable[[Matroid], bool] = lambda M: True) -> Iterator[dict]:
    rng = random.Random(cfg.seed)
    for M in full_corpus(7, cfg.size or 7):
        if not keep(M) or (max_n is not None and M.n > max_n):
            continue
        mj = io.matroid_to_json(M)
        for o in _orderings(M.n, cfg.orderings or default_orderings, rng):
            yield {"matroid": mj, "ordering": list(o.sequence)}


def arrangement_corpus(seed: int = 0) -> list[Arrangement]:
    return [
        Arrangement.from_columns([(1, 0), (0, 1), (1, 1)], "three-lines"),
        generic(2, 4, seed),
        generic(2, 5, seed),
        braid_arrangement(4),
        cone(cone(generic(2, 4, seed))),
    ]


def _payloads(name: str, cfg: VerifyConfig) -> Iterator[dict]:
    rng = random.Random(cfg.seed)
    if name == "whitney":
        for g in connected_graphs(cfg.size or 8):
            for o in _orderings(g.n_edges, cfg.orderings or 3, rng):
                yield {"graph": io.graph_to_json(g), "ordering": list(o.sequence)}
    elif name == "groebner":
        for a in arrangement_corpus(cfg.seed) + [graphic_arrangement(eared_square_graph())]:
            aj = io.arrangement_to_json(a)
            for o in _orderings(a.n, cfg.orderings or 3, rng):
                for kind in ("lex", "degrevlex"):
                    yield {"arrangement": aj, "ordering": list(o.sequence), "order": kind}
    elif name == "ci-equivalence":
        yield from _matroid_payloads(cfg, 20)
    elif name == "linear-resolution":
        yield from _matroid_payloads(cfg, 5, keep=lambda M: not M.is_free())
    elif name == "supersolvable":
        for M in full_corpus(7, cfg.size or 7):
            if M.n <= 10:
                yield {"matroid": io.matroid_to_json(M)}
    elif name == "gorenstein":
        yield {"ideal": {"n": 5, "generators": ["x1*x2", "x2*x3", "x3*x4", "x4*x5", "x5*x1"]},
               "expect": "gorenstein_pattern"}
        yield {"ideal": {"n": 7, "generators": ["x1*x2", "x3*x4", "x5*x6*x7"]}, "expect": "complete_intersection"}
        yield from _matroid_payloads(cfg, 10, keep=lambda M: M.n - M.rank == 3)
    elif name == "hilbert":
        for a in arrangement_corpus(cfg.seed):
            for o in _orderings(a.n, cfg.orderings or 2, rng):
                yield {"arrangement": io.arrangement_to_json(a), "ordering": list(o.sequence), "degree": 8}
    elif name == "wilf":
        for t in (tetrahedron(), octahedron()):
            yield {"triangulation": io.triangulation_to_json(t)}
    elif name == "triangulation":
        for ell in range(3, (cfg.size or 8) + 1):
            yield {"triangulation": io.triangulation_to_json(polygon_fan(ell))}
            for _ in range(cfg.orderings or 3):
                yield {"triangulation": io.triangulation_to_json(random_polygon_triangulation(ell, rng))}
    else:
        raise InvalidInput(f"unknown suite {name!r}")


SUITES = tuple(CHECKS)


# -- running ------------------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    dumped: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def run_suite(name: str, cfg: VerifyConfig) -> SuiteResult:
    check = CHECKS.get(name)
    if check is None:
        raise InvalidInput(f"unknown suite {name!r}; choose from {', '.join(SUITES)} or all")
    res = SuiteResult(name)
    for payload in _payloads(name, cfg):
        res.checked += 1
        try:
            check(payload)
        except (InvariantViolation, AssertionError) as exc:
            record = {"check": name, "reason": str(exc), **payload}
            res.failures.append(record)
            log.warning("%s failure: %s", name, exc)
            if cfg.dump_dir is not None:
                cfg.dump_dir.mkdir(parents=True, exist_ok=True)
                path = cfg.dump_dir / f"{name}-{len(res.failures)}.json"
                io.save(path, record)
                res.dumped.append(str(path))
            if len(res.failures) >= cfg.max_failures:
                break
    return res


def run(cfg: VerifyConfig) -> list[SuiteResult]:
    names = SUITES if cfg.suite == "all" else (cfg.suite,)
    return [run_suite(n, cfg) for n in names]


def replay(path: str | Path) -> None:
    """Re-run the check recorded in a counterexample file; raises if it still fails."""
    data = io.load(path)
    if not isinstance(data, dict) or data.get("check") not in CHECKS:
        raise InvalidInput(f"{path} is not a counterexample file")
    CHECKS[data["check"]](data)
