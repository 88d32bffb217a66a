import itertools
from collections import Counter
from math import comb

import pytest

from betweenness._guard import GuardError
from betweenness.core import check_frp, cosize, delete_point, is_orderable, is_regular
from betweenness.enumerate import (
    PropertyFilter,
    enumerate_structures,
    find_structure,
    hypergraph_orbits,
    probe_gamma_sigma,
    tau,
    tau_second,
)
from betweenness.families import induced_structure, parse_spec
from betweenness.iso import canonical_form, hypergraph_canonical

from conftest import naive_structures


def forms(labels):
    return {canonical_form(induced_structure(parse_spec(s))) for s in labels}


@pytest.mark.parametrize("n", [3, 4])
def test_agrees_with_naive_enumeration(n):
    naive = Counter()
    for b in naive_structures(n):
        naive[(cosize(b), canonical_form(b))] += 1
    for m in range(comb(n, 3) + 1):
        res = enumerate_structures(n, m)
        got = {(m, c.form): c.labeled_count for c in res.classes}
        want = {k: v for k, v in naive.items() if k[0] == m}
        assert got == want, m


@pytest.mark.parametrize("n", [3, 4])
@pytest.mark.parametrize("flt", ["regular", "orderable"])
def test_filters_agree_with_naive(n, flt):
    keep = is_regular if flt == "regular" else (lambda b: is_orderable(b) is not None)
    want = {canonical_form(b) for b in naive_structures(n) if keep(b)}
    got = enumerate_structures(n, (0, comb(n, 3)), flt).forms()
    assert got == want


def test_examples():
    r4 = enumerate_structures(4, 0)
    assert r4.forms() == forms(["P4", "C4"])
    assert enumerate_structures(5, 1).forms() == forms(["K2,3", "R5,1^4", "S5^4"])


def test_n7_cosize3():
    res = enumerate_structures(7, 3)
    assert res.forms() == forms(["R7,1^4", "R7,2^4", "S7^4"])


def test_emitted_structures_satisfy_axioms_and_cosize():
    res = enumerate_structures(6, (2, 4))
    for c in res.classes:
        assert check_frp(c.representative)
        assert 2 <= cosize(c.representative) <= 4
        assert canonical_form(c.representative) == c.form


@pytest.mark.parametrize("flt", ["regular", "orderable"])
def test_filter_hereditarity(flt):
    keep = is_regular if flt == "regular" else (lambda b: is_orderable(b) is not None)
    res = enumerate_structures(6, (0, 5), flt)
    assert len(res) > 0
    for b in res.structures():
        assert keep(b)
        for x in range(b.n):
            assert keep(delete_point(b, x))


def test_determinism():
    a = enumerate_structures(6, 3, "regular")
    b = enumerate_structures(6, 3, "regular", workers=2)
    assert [(c.form, c.representative, c.labeled_count) for c in a.classes] == \
        [(c.form, c.representative, c.labeled_count) for c in b.classes]


def test_hypergraph_orbits_brute_force():
    for n in (4, 5):
        triples = list(itertools.combinations(range(n), 3))
        for m in range(len(triples) + 1):
            want = {hypergraph_canonical(n, es).form for es in itertools.combinations(triples, m)}
            got = hypergraph_orbits(n, m)
            assert {hypergraph_canonical(n, es).form for es, _ in got} == want
            # orbit sizes add up to all labeled edge sets
            assert sum(120 // aut if n == 5 else 24 // aut for _, aut in got) == comb(len(triples), m)


def test_tau_examples():
    assert tau(6, 0) == 2
    assert tau(5, 0, "regular") == 2
    assert tau(6, 0, PropertyFilter.ORDERABLE) == 4
    assert [tau_second(n) for n in (4, 5)] == [3, 4]
    w = find_structure(4, 3)
    assert w is not None and cosize(w) == 3 and check_frp(w)


@pytest.mark.slow
def test_tau_second_n7():
    assert tau_second(7) == 6


def test_probes():
    assert all(r.nonempty for r in probe_gamma_sigma(1, 4, range(5, 8)))
    assert not any(r.nonempty for r in probe_gamma_sigma(1, 5, range(6, 8)))
    rows = probe_gamma_sigma(2, 10, range(5, 8))
    assert all(r.nonempty and cosize(r.witness) == 2 * r.n - 10 for r in rows)


def test_guards(monkeypatch):
    monkeypatch.delenv("BWL_MAX_N", raising=False)
    with pytest.raises(GuardError):
        enumerate_structures(8, 0)
    with pytest.raises(GuardError):
        tau(9, 0, long_run=True)
