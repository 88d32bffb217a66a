import itertools
from fractions import Fraction

import pytest

from betweenness.core import check_frp, cosize, is_linear, restrict
from betweenness.families import (
    CATALOG_LABELS,
    FamilyRangeError,
    FamilySpec,
    all_specs,
    build,
    catalog_graph,
    exceptional_catalog,
    induced_structure,
    parse_spec,
    t_index_range,
)
from betweenness.catalog import catalog_graphs
from betweenness.graphs import induce_graph, loads_wg
from betweenness.hyper import is_tight_k_star, is_tight_star, triangle_hypergraph
from betweenness.iso import canonical_form, is_isomorphic


def edge_set(g):
    return {(u, v): w for u, v, w in g.edges}


def test_build_s64():
    g = build(FamilySpec("S", 6, None, 4))
    # x1..x4 = 0..3, y = 4, z = 5
    assert edge_set(g) == {(0, 1): 1, (1, 2): 1, (2, 3): 1, (0, 4): 1, (3, 5): 1, (4, 5): 3}


def test_build_t71():
    g = build(FamilySpec("T", 7, 1))
    # x1, x2, x3 = 0, 1, 2; y, z, u, v = 3, 4, 5, 6
    x1, x2, x3, y, z, u, v = range(7)
    want = {(x2, x3), (x1, y), (x1, z), (y, u), (y, v), (z, u), (z, v), (u, x2), (v, x2)}
    assert set(edge_set(g)) == {tuple(sorted(e)) for e in want}
    assert all(w == 1 for w in edge_set(g).values())


def test_q32_degenerates_to_triangle():
    g = build(FamilySpec("Q", 3, None, 2))
    assert set(edge_set(g)) == {(0, 1), (0, 2), (1, 2)}
    assert cosize(induce_graph(g)) == 1


def all_in_range(max_n=10):
    for n in range(3, max_n + 1):
        for c in (2, 3):
            yield from all_specs("Q", c, n)
        for c in (2, 3, 4):
            yield from all_specs("R", c, n)
            yield from all_specs("S", c, n)


def test_family_cosizes():
    count = 0
    for spec in all_in_range():
        b = induced_structure(spec)
        assert check_frp(b)
        assert cosize(b) == spec.n - spec.c, spec
        count += 1
    assert count > 60
    for n in range(6, 13):
        for i in t_index_range(n):
            assert cosize(induced_structure(FamilySpec("T", n, i))) == 2 * n - 10


def test_family_hypergraphs():
    for spec in all_in_range(9):
        h = triangle_hypergraph(induced_structure(spec))
        assert is_tight_star(h) is not None, spec
    for n in range(7, 11):
        for i in t_index_range(n):
            h = triangle_hypergraph(induced_structure(FamilySpec("T", n, i)))
            assert is_tight_star(h) is None
            assert is_tight_k_star(h, 2)


def test_pairwise_non_isomorphic_within_family():
    for n in range(4, 10):
        for kind, c in [("R", 2), ("R", 3), ("R", 4), ("T", None)]:
            specs = all_specs(kind, c, n)
            forms = [canonical_form(induced_structure(s)) for s in specs]
            assert len(set(forms)) == len(forms), (kind, c, n)


def test_same_size_families_distinct():
    for n in range(5, 10):
        for c in (2, 3):
            specs = all_specs("Q", c, n) + all_specs("R", c, n) + all_specs("S", c, n)
            forms = [canonical_form(induced_structure(s)) for s in specs]
            assert len(set(forms)) == len(forms)


@pytest.mark.parametrize("spec, bound", [
    (FamilySpec("Q", 3, None, 3), "n >= 4"),
    (FamilySpec("Q", 2, None, 2), "n >= 3"),
    (FamilySpec("R", 4, 1, 4), "n >= 5"),
    (FamilySpec("R", 6, 3, 4), "i <= 2"),
    (FamilySpec("R", 6, 4, 3), "i <= 3"),
    (FamilySpec("R", 3, 1, 3), "n >= 4"),
    (FamilySpec("S", 4, None, 4), "n >= 5"),
    (FamilySpec("S", 3, None, 3), "n >= 4"),
    (FamilySpec("T", 5, 1), "n >= 6"),
    (FamilySpec("T", 8, 3), "i <= 2"),
    (FamilySpec("S", 6, None, 5), "c in"),
])
def test_range_errors_name_the_bound(spec, bound):
    with pytest.raises(FamilyRangeError, match=bound.replace("^", r"\^")):
        build(spec)


def test_index_ranges():
    assert [len(all_specs("R", 4, n)) for n in range(5, 10)] == [1, 2, 2, 3, 3]
    assert [len(all_specs("R", 3, n)) for n in range(4, 8)] == [1, 2, 3, 4]
    assert [len(all_specs("T", None, n)) for n in range(6, 11)] == [1, 1, 2, 2, 3]


def test_parse_spec():
    assert parse_spec("R_{6,1}^4") == FamilySpec("R", 6, 1, 4)
    assert parse_spec("K3,3") == FamilySpec("Kab", 6, a=3, b=3)
    assert parse_spec("T7,1") == FamilySpec("T", 7, 1)
    with pytest.raises(FamilyRangeError):
        parse_spec("Z5")


def test_catalog_labels():
    cat = dict(exceptional_catalog())
    assert tuple(cat) == CATALOG_LABELS
    assert is_isomorphic(induce_graph(cat["A_5_1"]), induced_structure(FamilySpec("Kab", 5, a=2, b=3)))
    assert is_isomorphic(induce_graph(cat["A_6_1"]), induced_structure(FamilySpec("C", 6)))
    assert is_isomorphic(induce_graph(cat["A_6_4"]), induced_structure(FamilySpec("Kab", 6, a=3, b=3)))
    assert catalog_graph("A_5^1") == cat["A_5_1"]
    with pytest.raises(KeyError):
        catalog_graph("A_9_9")


def test_catalog_entries_are_quasilinear_and_distinct():
    cat = dict(exceptional_catalog())
    forms = set()
    for label, g in cat.items():
        b = induce_graph(g)
        assert cosize(b) == max(1, b.n - 4), label
        forms.add(canonical_form(b))
    assert len(forms) == len(cat)


def test_derived_order6_entries_match_shipped_data():
    shipped = dict(exceptional_catalog())
    derived = catalog_graphs()
    for label in ("A_6_2", "A_6_3"):
        assert shipped[label] == derived[label]
        named = [FamilySpec("R", 6, i, 4) for i in (1, 2)] + [FamilySpec("S", 6, None, 4),
                                                              FamilySpec("C", 6), FamilySpec("Kab", 6, a=3, b=3)]
        b = induce_graph(shipped[label])
        assert not any(is_isomorphic(b, induced_structure(s)) for s in named)


def test_missing_catalog_rejected(tmp_path):
    with pytest.raises(FileNotFoundError):
        exceptional_catalog(tmp_path)
