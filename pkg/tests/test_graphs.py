import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betweenness.core import FormatError, check_frp, cosize, restrict
from betweenness.families import FamilySpec, build, induced_structure, parse_spec
from betweenness.graphs import (
    RationalMetric,
    WeightedGraph,
    adjacency_graph,
    apsp,
    dumps_metric,
    dumps_wg,
    induce,
    induce_graph,
    loads_metric,
    loads_wg,
)
from betweenness.hyper import H1_TILDE, triangle_hypergraph
from betweenness.iso import hypergraph_canonical

from conftest import weighted_graphs


def path_lengths(g):
    """Shortest path lengths by enumerating every simple path."""
    adj = {p: {} for p in range(g.n)}
    for u, v, w in g.edges:
        adj[u][v] = adj[v][u] = w
    best = {}

    def walk(start, p, seen, length):
        key = (start, p)
        if key not in best or length < best[key]:
            best[key] = length
        for q, w in adj[p].items():
            if q not in seen:
                walk(start, q, seen | {q}, length + w)

    for s in range(g.n):
        walk(s, s, {s}, Fraction(0))
    return best


def test_apsp_examples():
    assert apsp(WeightedGraph.unit(3, [(0, 1), (1, 2)]))(0, 2) == 2
    k23 = build(FamilySpec("Kab", 5, a=2, b=3))
    m = apsp(k23)
    for x, y in itertools.combinations(range(5), 2):
        same = (x < 2) == (y < 2)
        assert m(x, y) == (2 if same else 1)


def test_apsp_s54_against_path_enumeration():
    g = build(FamilySpec("S", 5, None, 4))
    m = apsp(g)
    best = path_lengths(g)
    assert m(3, 4) == 2
    for x, y in itertools.combinations(range(5), 2):
        assert m(x, y) == best[(x, y)]


@settings(max_examples=50, deadline=None)
@given(weighted_graphs(max_n=6))
def test_apsp_matches_path_enumeration(g):
    m = apsp(g)
    assert m.is_valid()
    best = path_lengths(g)
    for x, y in itertools.combinations(range(g.n), 2):
        assert m(x, y) == best[(x, y)]


def test_induce_examples():
    c4 = induced_structure(FamilySpec("C", 4))
    assert cosize(c4) == 0
    assert c4.middle(0, 1, 2) == 1 and c4.middle(0, 2, 3) == 3
    assert cosize(induced_structure(FamilySpec("K", 3))) == 1
    t71 = induced_structure(parse_spec("T7,1"))
    assert hypergraph_canonical(7, triangle_hypergraph(t71).sorted_edges()).form == \
        hypergraph_canonical(7, H1_TILDE.sorted_edges()).form


def test_adjacency_graph_examples():
    for n in range(2, 8):
        assert adjacency_graph(induced_structure(FamilySpec("P", n))).edges == \
            frozenset((i, i + 1) for i in range(n - 1))
    assert adjacency_graph(induced_structure(FamilySpec("C", 4))).edges == \
        frozenset({(0, 1), (1, 2), (2, 3), (0, 3)})
    k23 = build(FamilySpec("Kab", 5, a=2, b=3))
    assert adjacency_graph(induce_graph(k23)).edges == frozenset((u, v) for u, v, _ in k23.edges)


@settings(max_examples=60, deadline=None)
@given(weighted_graphs(), st.data())
def test_adjacency_graph_properties(g, data):
    b = induce_graph(g)
    assert check_frp(b)
    adj = adjacency_graph(b)
    assert adj.is_connected()
    # every adjacency pair must be a graph edge
    edges = {(u, v) for u, v, _ in g.edges}
    assert adj.edges <= edges
    ys = sorted(data.draw(st.sets(st.integers(0, g.n - 1), min_size=2)))
    assert adj.induced(ys).edges <= adjacency_graph(restrict(b, ys)).edges


@settings(max_examples=40, deadline=None)
@given(weighted_graphs(), st.fractions(min_value=Fraction(1, 9), max_value=9))
def test_scaling_invariance(g, lam):
    m = apsp(g)
    ms = apsp(g.scaled(lam))
    assert all(ms(x, y) == lam * m(x, y) for x in range(g.n) for y in range(g.n))
    assert induce(ms) == induce(m)


def test_graph_validation():
    with pytest.raises(ValueError):
        apsp(WeightedGraph.unit(4, [(0, 1), (2, 3)]))
    with pytest.raises(ValueError):
        WeightedGraph(2, ((0, 1, Fraction(0)),))
    with pytest.raises(ValueError):
        WeightedGraph.unit(3, [(0, 0), (0, 1), (1, 2)])
    with pytest.raises(ValueError):
        WeightedGraph.unit(3, [(0, 1), (1, 0)])
    bad = RationalMetric(((0, 1, 5), (1, 0, 1), (5, 1, 0)))
    assert any("triangle" in v for v in bad.violations())


def test_wg_and_metric_round_trip():
    g = build(FamilySpec("S", 6, None, 4)).scaled(Fraction(2, 3))
    assert loads_wg(dumps_wg(g)) == g
    m = apsp(g)
    assert loads_metric(dumps_metric(m)) == m
    assert loads_wg("# c\nn 2\ne 0 1 3/4\n").edges[0][2] == Fraction(3, 4)
    for bad in ["", "x 2", "n 2\ne 0 1", "n 2\ne 0 1 1/0", "n 2\ne 0 1 -1", "n 2\ne 0 0 1"]:
        with pytest.raises(FormatError):
            loads_wg(bad)
    for bad in ["", "n 3\n1 1", "n 2\nq"]:
        with pytest.raises(FormatError):
            loads_metric(bad)
