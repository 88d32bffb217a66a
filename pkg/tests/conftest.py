import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from betweenness.core import TRIANGLE, BetweennessStructure, all_triples, check_frp
from betweenness.graphs import WeightedGraph

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


# ---------------------------------------------------------------- oracles

def naive_structures(n):
    """Every almost-metrizable structure on n points by trying all 4^C(n,3) states."""
    triples = all_triples(n)
    options = [(TRIANGLE,) + t for t in triples]
    for mids in itertools.product(*options):
        b = BetweennessStructure(n, tuple(mids))
        if check_frp(b):
            yield b


def random_connected_graph(rng: random.Random, n: int, max_num=8, max_den=8, p=0.5) -> WeightedGraph:
    """Random spanning tree plus extra edges, weights p/q with p, q <= 8."""
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {}
    for k in range(1, n):
        u, v = perm[k], perm[rng.randrange(k)]
        edges[(min(u, v), max(u, v))] = None
    for u, v in itertools.combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges[(u, v)] = None
    return WeightedGraph(n, tuple(
        (u, v, Fraction(rng.randint(1, max_num), rng.randint(1, max_den))) for u, v in edges))


@st.composite
def weighted_graphs(draw, min_n=3, max_n=7, integral=False):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    if integral:
        return random_connected_graph(rng, n, max_num=3, max_den=1)
    return random_connected_graph(rng, n)


@st.composite
def permutations_of(draw, n):
    return tuple(draw(st.permutations(range(n))))


@pytest.fixture
def rng():
    return random.Random(20240611)
