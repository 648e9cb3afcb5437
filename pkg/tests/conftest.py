import itertools
import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bcx.broken import Ordering
from bcx.corpus import connected_graphs, eared_square_matroid
from bcx.matroid import SimpleGraph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def orderings(n):
    return st.permutations(list(range(1, n + 1))).map(lambda p: Ordering(tuple(p)))


@st.composite
def small_graphs(draw, max_edges=7):
    """Connected simple graphs from the enumerated corpus, with relabeled edges."""
    pool = connected_graphs(max_edges)
    g = draw(st.sampled_from(pool))
    perm = draw(st.permutations(list(g.edges)))
    return SimpleGraph(g.vertices, perm)


@st.composite
def simple_columns(draw, max_rank=3, max_n=7, bound=3):
    """Integer column vectors spanning Q^r, pairwise non-parallel and nonzero."""
    r = draw(st.integers(2, max_rank))
    entry = st.integers(-bound, bound)
    cols = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    extra = draw(st.lists(st.tuples(*[entry] * r), max_size=max_n - r))
    for c in extra:
        if all(x == 0 for x in c):
            continue
        if any(_parallel(c, d) for d in cols):
            continue
        cols.append(c)
    return cols


def _parallel(a, b):
    return all(a[i] * b[j] == a[j] * b[i] for i, j in itertools.combinations(range(len(a)), 2))


@pytest.fixture(scope="session")
def eared():
    return eared_square_matroid()
