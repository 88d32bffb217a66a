import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from betweenness._guard import GuardError
from betweenness.core import TRIANGLE, BetweennessStructure, all_triples, check_frp
from betweenness.families import FamilySpec, build, induced_structure, parse_spec
from betweenness.graphs import apsp, induce
from betweenness.hyper import H1_TILDE, H2_TILDE, H3_TILDE, TriangleHypergraph
from betweenness.iso import canonical_form, is_isomorphic
from betweenness.metrize import (
    FeasibilitySystem,
    Reason,
    brute_force_metrizable,
    feasibility_system,
    metrize_hypergraph,
    metrize_structure,
    solve_feasibility,
    validate_certificate,
)

from conftest import weighted_graphs


def fam(label):
    return induced_structure(parse_spec(label))


def scipy_metrizable(b):
    """Independent LP oracle over floats (small instances, comfortable margins)."""
    sys = feasibility_system(b)
    pairs = sys.pairs
    idx = {p: k for k, p in enumerate(pairs)}
    a_eq, b_eq, a_ub, b_ub = [], [], [], []
    for xz, xy, yz in sys.equalities:
        row = [0.0] * len(pairs)
        row[idx[xz]] += 1
        row[idx[xy]] -= 1
        row[idx[yz]] -= 1
        a_eq.append(row)
        b_eq.append(0.0)
    for xy, yz, xz in sys.slacks:
        row = [0.0] * len(pairs)
        row[idx[xy]] -= 1
        row[idx[yz]] -= 1
        row[idx[xz]] += 1
        a_ub.append(row)
        b_ub.append(-1.0)
    res = linprog([0.0] * len(pairs), A_ub=a_ub or None, b_ub=b_ub or None,
                  A_eq=a_eq or None, b_eq=b_eq or None, bounds=[(1, None)] * len(pairs),
                  method="highs")
    return res.status == 0


def test_metrize_structure_examples():
    p3 = fam("P3")
    m = metrize_structure(p3)
    assert induce(m) == p3 and m(0, 2) == m(0, 1) + m(1, 2)
    t71 = fam("T7,1")
    assert induce(metrize_structure(t71)) == t71


@pytest.mark.parametrize("label", ["K3", "C4", "K2,3", "S6^4", "R6,2^3", "Q7^2", "T8,1", "K3,3"])
def test_families_metrize_with_lower_bounds(label):
    b = fam(label)
    m = metrize_structure(b)
    assert m is not None and not validate_certificate(b, m)
    for x, y in itertools.combinations(range(b.n), 2):
        assert m(x, y) >= 1
    for t in b.triangles():
        for x, y, z in itertools.permutations(t):
            assert m(x, y) + m(y, z) - m(x, z) >= 1


def test_k23_unit_metric_satisfies_system():
    b = fam("K2,3")
    m = apsp(build(FamilySpec("Kab", 5, a=2, b=3)))
    sys = feasibility_system(b)
    assert all(m(*xz) == m(*xy) + m(*yz) for xz, xy, yz in sys.equalities)
    assert all(m(*xy) + m(*yz) - m(*xz) >= 1 for xy, yz, xz in sys.slacks)
    assert solve_feasibility(sys) is not None


def test_system_shape():
    b = fam("T7,1")
    sys = feasibility_system(b)
    assert len(sys.equalities) == 35 - 4
    assert len(sys.slacks) == 3 * 4
    assert len(sys.pairs) == 21


def test_forced_zero_distance_is_infeasible():
    sys = FeasibilitySystem(3, equalities=[((0, 2), (0, 1), (1, 2)), ((0, 2), (0, 2), (1, 2))])
    assert solve_feasibility(sys) is None


def test_validator_rejects_bad_certificates():
    b = fam("P4")
    m = metrize_structure(b)
    assert validate_certificate(fam("C4"), m)
    assert validate_certificate(b, apsp(build(FamilySpec("C", 4))))
    from betweenness.graphs import RationalMetric
    bad = RationalMetric(((0, 1, 3), (1, 0, 1), (3, 1, 0)))
    assert validate_certificate(BetweennessStructure(3, (1,)), bad)


@settings(max_examples=40, deadline=None)
@given(weighted_graphs(max_n=6), st.sampled_from([Fraction(2), Fraction(1, 2)]))
def test_validator_scale_contract(g, lam):
    m = apsp(g)
    b = induce(m)
    assert validate_certificate(b, m) == []
    assert validate_certificate(b, m.scaled(lam)) == []
    assert induce(m.scaled(lam)) == b


@settings(max_examples=40, deadline=None)
@given(weighted_graphs(max_n=7))
def test_graph_structures_metrize(g):
    b = induce(apsp(g))
    m = metrize_structure(b)
    assert m is not None and induce(m) == b


def test_metrizable_implies_almost_metrizable_and_lp_agrees_with_scipy():
    count = 0
    for mids in itertools.product(*[(TRIANGLE, a, b, c) for a, b, c in all_triples(4)]):
        b = BetweennessStructure(4, tuple(mids))
        m = metrize_structure(b) if check_frp(b) else None
        if not check_frp(b):
            # the LP may still be run directly; it must not produce a valid certificate
            sol = solve_feasibility(feasibility_system(b))
            if sol is not None:
                from betweenness.metrize import metric_from_solution
                assert validate_certificate(b, metric_from_solution(4, sol))
            continue
        count += 1
        assert (m is not None) == scipy_metrizable(b)
    assert count > 0


def test_hypergraph_examples():
    v1 = metrize_hypergraph(H1_TILDE, collect_all=True)
    assert v1.metrizable and v1.label() == "Metrizable"
    assert len(v1.realizations) == 1
    assert is_isomorphic(v1.realizations[0].structure, fam("T7,1"))
    assert induce(v1.metric) == v1.structure
    for h in (H2_TILDE, H3_TILDE):
        v = metrize_hypergraph(h)
        assert not v.metrizable
        assert v.reason in (Reason.NO_ALMOST_METRIZABLE, Reason.ALL_LP_INFEASIBLE)
    empty = metrize_hypergraph(TriangleHypergraph.of(4, []), collect_all=True)
    got = {canonical_form(r.structure) for r in empty.realizations}
    assert got == {canonical_form(fam("P4")), canonical_form(fam("C4"))}
    assert all(r.metrizable for r in empty.realizations)


def test_guard():
    with pytest.raises(GuardError):
        metrize_hypergraph(TriangleHypergraph.of(10, []))


@st.composite
def small_hypergraphs(draw, n):
    triples = list(itertools.combinations(range(n), 3))
    return TriangleHypergraph.of(n, draw(st.sets(st.sampled_from(triples))))


@pytest.mark.parametrize("n", [3, 4])
def test_agrees_with_brute_force_exhaustive(n):
    triples = list(itertools.combinations(range(n), 3))
    for k in range(len(triples) + 1):
        for edges in itertools.combinations(triples, k):
            h = TriangleHypergraph.of(n, edges)
            assert metrize_hypergraph(h).metrizable == brute_force_metrizable(h)


@settings(max_examples=15, deadline=None)
@given(small_hypergraphs(5).filter(lambda h: len(h) >= 3))
def test_agrees_with_brute_force_n5(h):
    assert metrize_hypergraph(h).metrizable == brute_force_metrizable(h)


def test_collect_all_matches_labeled_completions():
    h = TriangleHypergraph.of(5, [(0, 1, 2)])
    v = metrize_hypergraph(h, collect_all=True)
    assert sum(r.assignments for r in v.realizations) == v.assignments_searched
    triples = all_triples(5)
    free = [t for t in triples if t != (0, 1, 2)]
    labeled = 0
    for choice in itertools.product(range(3), repeat=len(free)):
        mid = dict(zip(free, (t[c] for t, c in zip(free, choice))))
        b = BetweennessStructure(5, tuple(mid.get(t, TRIANGLE) for t in triples))
        labeled += check_frp(b)
    assert v.assignments_searched == labeled
    forms = {canonical_form(r.structure) for r in v.realizations}
    assert len(forms) == len(v.realizations)
