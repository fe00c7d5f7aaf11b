import itertools

import pytest
from hypothesis import strategies as st

from engelgraph import catalog
from engelgraph.perm import Permutation

SMALL_GROUPS = ["S3", "D8", "Q8", "S4", "A4", "D10", "AGL1(5)", "SL(2,3)", "C2xS4"]


@st.composite
def permutations(draw, min_degree=1, max_degree=7, degree=None):
    n = degree if degree is not None else draw(st.integers(min_degree, max_degree))
    return Permutation(tuple(draw(st.permutations(range(n)))))


@st.composite
def perm_pairs(draw, max_degree=7):
    n = draw(st.integers(1, max_degree))
    return draw(permutations(degree=n)), draw(permutations(degree=n))


@pytest.fixture(scope="session")
def build():
    return catalog.build


def brute_closure(gens):
    """Oracle: naive closure on tuples."""
    seen = {tuple(range(gens[0].degree))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x, g in itertools.product(frontier, gens):
            y = tuple(g.images[i] for i in x)
            if y not in seen:
                seen.add(y)
                nxt.append(y)
        frontier = nxt
    return seen


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
