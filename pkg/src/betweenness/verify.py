"""Finite-range machine checks of the classification results.

Every claim is a function ``(max_n, long_run) -> ClaimReport``.  Claims
whose statement reaches beyond the enumeration guard are checked on the
guarded range and the remainder is listed under ``out_of_scope``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Callable

from .core import (
    BetweennessStructure,
    cosize,
    check_frp,
    dumps_bws,
    find_cyclic_lines,
    is_linear,
    is_ordered,
    is_regular,
    restrict,
    triangle_degree,
)
from .enumerate import ClassificationResult, enumerate_structures, find_structure, tau
from .families import FamilySpec, all_specs, exceptional_catalog, induced_structure
from .graphs import induce_graph
from .hyper import (
    H1_TILDE,
    H2_TILDE,
    H3_TILDE,
    fano_hypergraph,
    is_delta_star,
    is_tight_k_star,
    is_tight_star,
    triangle_hypergraph,
)
from .iso import canonical_form
from .metrize import metrize_hypergraph

PASS, FAIL = "PASS", "FAIL"


@dataclass
class ClaimReport:
    claim_id: str
    verdict: str
    params: dict = field(default_factory=dict)
    details: list[str] = field(default_factory=list)
    witnesses: dict[str, BetweennessStructure] = field(default_factory=dict)
    out_of_scope: list[str] = field(default_factory=list)
    runtime: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    def write_witnesses(self, directory: Path) -> list[Path]:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        paths = []
        for name, b in self.witnesses.items():
            p = directory / f"{self.claim_id}_{name}.bws"
            p.write_text(dumps_bws(b))
            paths.append(p)
        return paths


@dataclass(frozen=True)
class Claim:
    claim_id: str
    title: str
    runtime_class: str  # "seconds" or "minutes" at the default range
    min_n: int
    fn: Callable


class _Check:
    """Collects failures and the first counterexample."""

    def __init__(self, claim_id: str, **params):
        self.report = ClaimReport(claim_id, PASS, params)

    def expect(self, cond: bool, msg: str, witness: BetweennessStructure | None = None) -> bool:
        if not cond:
            self.report.verdict = FAIL
            self.report.details.append("FAILED: " + msg)
            if witness is not None and len(self.report.witnesses) < 5:
                self.report.witnesses[f"counterexample{len(self.report.witnesses) + 1}"] = witness
        return cond

    def note(self, msg: str) -> None:
        self.report.details.append(msg)

    def skip(self, msg: str) -> None:
        self.report.out_of_scope.append(msg)


# ------------------------------------------------------------ shared helpers

@lru_cache(maxsize=None)
def classes(n: int, m: int, flt: str = "trivial", long_run: bool = False) -> ClassificationResult:
    return enumerate_structures(n, m, flt, long_run=long_run)


@lru_cache(maxsize=None)
def _tau(n: int, k: int, flt: str, long_run: bool) -> int | None:
    return tau(n, k, flt, long_run=long_run)


def family_forms(specs) -> set[bytes]:
    return {canonical_form(induced_structure(s)) for s in specs}


def _n_hi(max_n: int, cap: int) -> int:
    return min(max_n, cap)


def _nonlinear(res: ClassificationResult):
    return [c for c in res.classes if not is_linear(c.representative)]


# ------------------------------------------------------------ claims

def claim_plin(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 8 if long_run else 7)
    chk = _Check("plin", n_range=f"3..{hi}")
    counts = []
    for n in range(3, hi + 1):
        res = classes(n, 0, "trivial", long_run)
        counts.append(len(res))
        want = 2 if n == 4 else 1
        chk.expect(len(res) == want, f"n={n}: {len(res)} linear classes, expected {want}")
        for c in res.classes:
            if n != 4:
                chk.expect(is_ordered(c.representative) is not None, f"n={n}: linear class not ordered",
                           c.representative)
        if n == 4:
            want_forms = family_forms([FamilySpec("P", 4), FamilySpec("C", 4)])
            chk.expect(res.forms() == want_forms, "n=4 classes are not {P_4, C_4}")
    chk.report.params["class_counts"] = counts
    chk.skip(f"n > {hi}")
    return chk.report


def claim_tqus1(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 8 if long_run else 7)
    chk = _Check("tqus1", n_range=f"3..{hi}")
    vals = []
    for n in range(3, hi + 1):
        t = _tau(n, 0, "trivial", long_run)
        vals.append(t)
        chk.expect(t == max(1, n - 4), f"tau({n},0) = {t}, expected {max(1, n - 4)}")
    chk.report.params["tau"] = vals
    chk.skip(f"n > {hi}")
    return chk.report


def _extremal_class_check(chk, n, m, flt, want_specs, long_run, extra_forms=()):
    res = classes(n, m, flt, long_run)
    want = family_forms(want_specs) | set(extra_forms)
    got = res.forms()
    chk.expect(got == want, f"n={n}, cosize {m}, {flt}: {len(got)} classes vs {len(want)} expected "
               f"({len(got - want)} unexpected, {len(want - got)} missing)",
               next((c.representative for c in res.classes if c.form not in want), None))
    return len(got)


def claim_tqus2(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 8 if long_run else 7)
    chk = _Check("tqus2", n_range=f"3..{hi}")
    vals, counts = [], []
    for n in range(3, hi + 1):
        t = _tau(n, 0, "regular", long_run)
        vals.append(t)
        want = max(1, n - 3)
        chk.expect(t == want, f"tau_regular({n},0) = {t}, expected {want}")
        if n == 3:
            specs = [FamilySpec("K", 3)]
        else:
            specs = all_specs("Q", 3, n) + all_specs("R", 3, n) + all_specs("S", 3, n)
        counts.append(_extremal_class_check(chk, n, want, "regular", specs, long_run))
    chk.report.params.update(tau=vals, class_counts=counts)
    chk.skip(f"n > {hi}")
    return chk.report


def claim_tqus3(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 8 if long_run else 7)
    chk = _Check("tqus3", n_range=f"3..{hi}")
    vals, counts = [], []
    for n in range(3, hi + 1):
        t = _tau(n, 0, "orderable", long_run)
        vals.append(t)
        chk.expect(t == n - 2, f"tau_orderable({n},0) = {t}, expected {n - 2}")
        specs = all_specs("Q", 2, n) + all_specs("R", 2, n) + all_specs("S", 2, n)
        counts.append(_extremal_class_check(chk, n, n - 2, "orderable", specs, long_run))
    chk.report.params.update(tau=vals, class_counts=counts)
    chk.skip(f"n > {hi}")
    return chk.report


def claim_lsmallgr(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 7)
    chk = _Check("lsmallgr", n_range=f"3..{hi}")
    catalog = {}
    for label, g in exceptional_catalog():
        catalog.setdefault(g.n, set()).add(canonical_form(induce_graph(g)))
    counts = []
    for n in range(3, hi + 1):
        m = max(1, n - 4)
        specs = (all_specs("R", 4, n) + all_specs("S", 4, n)) if n >= 5 else []
        counts.append(_extremal_class_check(chk, n, m, "trivial", specs, long_run, catalog.get(n, ())))
    chk.report.params["class_counts"] = counts
    return chk.report


def claim_tlinsize1(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 8 if long_run else 7)
    chk = _Check("tlinsize1", n_range=f"3..{hi}")
    # Part 1: c > 4
    for n in range(3, hi + 1):
        for c in range(5, n + 1):
            nonempty = find_structure(n, n - c, long_run=long_run) is not None
            chk.expect(nonempty == (n == c), f"part 1: B({n},{n - c}) nonempty={nonempty}")
    # Part 2: 2 <= c <= 4
    for c in (2, 3, 4):
        for n in range(3, hi + 1):
            if n - c < 0:
                continue
            nonempty = find_structure(n, n - c, long_run=long_run) is not None
            chk.expect(nonempty == (n >= c), f"part 2: B({n},{n - c}) nonempty={nonempty}")
        for n in range(11 - c, hi + 1):
            specs = (all_specs("Q", c, n) if c < 4 else []) + all_specs("R", c, n) + all_specs("S", c, n)
            _extremal_class_check(chk, n, n - c, "trivial", specs, long_run)
        if 11 - c > hi:
            chk.skip(f"part 2 characterization for c={c} starts at n={11 - c}")
    chk.skip("part 3 (c < 2) first applies at n >= 10")
    # Part 4: n = N_c - 1 = 10 - c
    chk.skip("part 4 for c <= 0 (n >= 10)")
    for c in range(1, 5):
        n = 10 - c
        if n > hi:
            chk.skip(f"part 4 at c={c}, n={n}")
            continue
        res = classes(n, n - c, "trivial", long_run)
        chk.expect(len(res) > 0, f"part 4: B({n},{n - c}) empty")
        loose = [b for b in res.structures() if is_tight_star(triangle_hypergraph(b)) is None]
        if chk.expect(bool(loose), f"part 4: every structure in B({n},{n - c}) has a tight star"):
            chk.report.witnesses[f"part4_n{n}"] = loose[0]
    return chk.report


def claim_tlinsize3(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 8 if long_run else 7)
    chk = _Check("tlinsize3", n_range=f"4..{hi}")
    vals = []
    for n in range(4, hi + 1):
        t = _tau(n, n - 2, "trivial", long_run)
        vals.append(t)
        chk.expect(t == n - 1, f"tau({n},{n - 2}) = {t}, expected {n - 1}")
    chk.report.params["tau"] = vals
    chk.skip(f"n = {hi + 1}..8 (value n-1) and n >= 9 (value 2n-10) need enumeration beyond the guard")
    return chk.report


def claim_tlinsize2(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 8 if long_run else 7)
    chk = _Check("tlinsize2", n_range=f"3..{hi}")
    # Part 1 on the probed range
    for n in range(3, hi + 1):
        for c in range(11, 2 * n + 1):
            want = (2 * n == c) or (c - 4 <= n <= c - 2)
            got = find_structure(n, 2 * n - c, long_run=long_run) is not None
            chk.expect(got == want, f"part 1: B({n},{2 * n - c}) nonempty={got}, expected {want}")
    # Part 2 existence
    for n in range(3, hi + 1):
        m = 2 * n - 10
        got = m >= 0 and find_structure(n, m, long_run=long_run) is not None
        chk.expect(got == (n >= 5), f"part 2: B({n},{m}) nonempty={got}")
    # Part 3: a non-T structure exists for 6 <= n < 9
    for n in range(6, min(hi, 8) + 1):
        res = classes(n, 2 * n - 10, "trivial", long_run)
        t_forms = family_forms(all_specs("T", None, n))
        other = [c.representative for c in res.classes if c.form not in t_forms]
        if chk.expect(bool(other), f"part 3: every class of B({n},{2 * n - 10}) is a T_(n,i)"):
            chk.report.witnesses[f"part3_n{n}"] = other[0]
    # Part 2 characterization direction at n = 9: T_{9,i} belong to B(9, 8)
    for s in all_specs("T", None, 9):
        b = induced_structure(s)
        chk.expect(check_frp(b) and cosize(b) == 8, f"{s.label()} not in B(9,8)", b)
    chk.skip("part 2 uniqueness (B(n,2n-10) = {T_n,i}) for n >= 9")
    return chk.report


def claim_cn5(max_n: int, long_run: bool) -> ClaimReport:
    chk = _Check("cn5", n=5, cosize=2, filter="regular")
    res = classes(5, 2, "regular")
    for b in res.structures():
        chk.expect(is_tight_star(triangle_hypergraph(b)) is not None, "hypergraph not a tight star", b)
    chk.report.params["classes"] = len(res)
    return chk.report


def claim_crn7(max_n: int, long_run: bool) -> ClaimReport:
    chk = _Check("crn7", n=7, cosize=3)
    if max_n < 7:
        chk.skip("needs n = 7")
        return chk.report
    res = classes(7, 3)
    for b in res.structures():
        chk.expect(is_tight_star(triangle_hypergraph(b)) is not None, "hypergraph not a tight star", b)
    chk.report.params["classes"] = len(res)
    return chk.report


def claim_cmetr7(max_n: int, long_run: bool) -> ClaimReport:
    chk = _Check("cmetr7", n=7)
    t71 = induced_structure(FamilySpec("T", 7, 1))
    v1 = metrize_hypergraph(H1_TILDE, collect_all=True)
    chk.expect(v1.metrizable, "H1 not metrizable")
    reals = v1.realizations or []
    chk.expect(len(reals) == 1, f"H1 has {len(reals)} realizing classes")
    chk.expect(all(canonical_form(r.structure) == canonical_form(t71) for r in reals),
               "H1 realization not isomorphic to T_(7,1)")
    if v1.structure is not None:
        chk.report.witnesses["H1_realization"] = v1.structure
    for name, h in (("H2", H2_TILDE), ("H3", H3_TILDE)):
        v = metrize_hypergraph(h)
        chk.expect(not v.metrizable, f"{name} metrizable", v.structure)
        chk.note(f"{name}: {v.label()}")
    chk.note(f"H1: {v1.label()}, {len(reals)} class(es)")
    return chk.report


def claim_fano(max_n: int, long_run: bool) -> ClaimReport:
    chk = _Check("fano", n=7)
    v = metrize_hypergraph(fano_hypergraph(), collect_all=True)
    chk.expect(not v.metrizable, "Fano hypergraph metrizable", v.structure)
    chk.note(f"{v.label()}; {v.assignments_searched} almost-metrizable assignments, "
             f"{len(v.realizations or [])} classes")
    chk.report.params["reason"] = v.reason.value if v.reason else None
    return chk.report


def claim_otstar(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 7)
    chk = _Check("otstar", n_range=f"3..{hi}")
    checked = 0
    for n in range(3, hi + 1):
        # the degree hypothesis forces co-size <= n - 2 once there are two triangles
        for c in range(2, n):
            if not n > 2 * c - 1:
                continue
            for b in _nonlinear(classes(n, n - c)):
                b = b.representative
                degs = [triangle_degree(b, x) for x in range(n)]
                if all(d == n - c or d <= 1 for d in degs):
                    checked += 1
                    chk.expect(is_tight_star(triangle_hypergraph(b)) is not None,
                               f"n={n}, c={c}: not a tight star", b)
    chk.report.params["instances"] = checked
    return chk.report


def claim_okern(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 7)
    chk = _Check("okern", n_range=f"6..{hi}")
    checked = 0
    for n in range(6, hi + 1):
        for c in classes(n, n - 4).classes:
            b = c.representative
            k = is_tight_star(triangle_hypergraph(b))
            if k is None:
                continue
            checked += 1
            lines = find_cyclic_lines(b)
            chk.expect(len(lines) == 1 and set(k) <= set(lines[0]),
                       f"n={n}: {len(lines)} cyclic lines, kernel {k}", b)
    chk.report.params["instances"] = checked
    return chk.report


def claim_o6qlin(max_n: int, long_run: bool) -> ClaimReport:
    """Checked up to isomorphism: the kernel position picks the class."""
    chk = _Check("o6qlin", n=6, cosize=2)
    want = {
        1: canonical_form(induced_structure(FamilySpec("S", 6, None, 4))),
        2: canonical_form(induced_structure(FamilySpec("R", 6, 1, 4))),
        3: canonical_form(induced_structure(FamilySpec("R", 6, 2, 4))),
    }
    checked = 0
    for c in classes(6, 2).classes:
        b = c.representative
        k = is_tight_star(triangle_hypergraph(b))
        if k is None:
            continue
        for q in k:
            p = k[0] if q == k[1] else k[1]
            rest = [x for x in range(6) if x != q]
            order = is_ordered(restrict(b, rest))
            if order is None:
                continue
            pos = [rest[i] for i in order].index(p) + 1
            i = min(pos, 6 - pos)
            checked += 1
            chk.expect(c.form == want[i], f"kernel position {pos} gives the wrong class", b)
    chk.report.params["instances"] = checked
    chk.expect(checked > 0, "no instance satisfied the hypotheses")
    return chk.report


def claim_lcyc(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 8 if long_run else 7)
    chk = _Check("lcyc", n_range=f"6..{hi}")
    for n in range(6, hi + 1):
        chk.expect(len(classes(n, 1, "trivial", long_run)) == 0, f"B({n},1) nonempty")
    chk.expect(len(classes(5, 1, "regular")) == 0, "regular B(5,1) nonempty")
    return chk.report


def claim_lgen2a(max_n: int, long_run: bool) -> ClaimReport:
    """Instances for (trivial, c=4), (regular, c=3), (orderable, c=2)."""
    hi = _n_hi(max_n, 7)
    chk = _Check("lgen2a", n_range=f"3..{hi}")
    checked = 0
    for flt, c in (("trivial", 4), ("regular", 3), ("orderable", 2)):
        for n in range(max(3, c + 1), hi + 1):
            for rec in _nonlinear(classes(n, n - c, flt)):
                b = rec.representative
                h = triangle_hypergraph(b)
                checked += 1
                chk.expect(is_delta_star(h) is not None, f"{flt}, n={n}: not a delta-star", b)
                if n > 2 * c - 1:
                    chk.expect(is_tight_star(h) is not None, f"{flt}, n={n}: not a tight star", b)
    chk.report.params["instances"] = checked
    return chk.report


def claim_lgen3(max_n: int, long_run: bool) -> ClaimReport:
    hi = _n_hi(max_n, 7)
    chk = _Check("lgen3", n_range=f"3..{hi}")
    checked = 0
    for n in range(3, hi + 1):
        # a tight star on n points has at most n - 2 edges
        for m in range(1, n - 1):
            c = n - m
            for rec in classes(n, m).classes:
                b = rec.representative
                if is_tight_star(triangle_hypergraph(b)) is None:
                    continue
                if n == 5 and not is_regular(b):
                    continue
                checked += 1
                if not chk.expect(2 <= c <= 4, f"n={n}: tight star at c={c}", b):
                    continue
                specs = (all_specs("Q", c, n) if c < 4 else []) + all_specs("R", c, n) + all_specs("S", c, n)
                chk.expect(rec.form in family_forms(specs), f"n={n}, c={c}: not a family member", b)
    chk.report.params["instances"] = checked
    return chk.report


def claim_cnktight(max_n: int, long_run: bool) -> ClaimReport:
    """Probe only: fraction of B(n, kn - c) with tight k-star hypergraphs."""
    hi = _n_hi(max_n, 7)
    chk = _Check("cnktight", n_range=f"3..{hi}")
    rows = []
    for k in (1, 2):
        for n in range(3, hi + 1):
            for c in range(k * n - 6, k * n + 1):
                m = k * n - c
                if not 1 <= m <= min(6, comb(n, 3)):
                    continue
                res = classes(n, m)
                good = sum(is_tight_k_star(triangle_hypergraph(b), k) for b in res.structures())
                rows.append(f"k={k} c={c} n={n}: {good}/{len(res)}")
    chk.report.details.extend(rows)
    chk.note("conjecture probe; no verdict is asserted from the data")
    chk.skip("thresholds N_c^k are not bounded by any finite probe")
    return chk.report


def claim_corollaries(max_n: int, long_run: bool) -> ClaimReport:
    """gamma/sigma values restricted to the probed orders."""
    hi = _n_hi(max_n, 8 if long_run else 7)
    chk = _Check("corollaries", n_range=f"3..{hi}")

    def nonempty(n, m):
        return 0 <= m <= comb(n, 3) and find_structure(n, m, long_run=long_run) is not None

    for c in (2, 3, 4):  # sigma(1, c) = c - 1 and gamma(1, c) infinite
        for n in range(3, hi + 1):
            chk.expect(nonempty(n, n - c) == (n > c - 1), f"k=1, c={c}, n={n}")
    for c in range(5, hi + 1):  # gamma(1, c) = c
        for n in range(c, hi + 1):
            chk.expect(nonempty(n, n - c) == (n == c), f"k=1, c={c}, n={n}")
    chk.skip("gamma(1, c) = 10 - c for c < 2 lies beyond the probe")
    for n in range(3, hi + 1):  # sigma(2, 10) = 4
        chk.expect(nonempty(n, 2 * n - 10) == (n >= 5), f"k=2, c=10, n={n}")
    for c in range(11, hi + 3):  # gamma(2, c) = c - 2
        n = c - 2
        chk.expect(nonempty(n, 2 * n - c), f"k=2, c={c}: B({n},{2 * n - c}) empty")
        for n2 in range(n + 1, hi + 1):
            chk.expect(not nonempty(n2, 2 * n2 - c), f"k=2, c={c}: B({n2},{2 * n2 - c}) nonempty")
    if hi + 2 < 11:
        chk.skip("gamma(2, c) for c > 10 first applies at n = 9")
    chk.skip("theta_min(2) is undetermined; data only")
    return chk.report


REGISTRY: dict[str, Claim] = {}


def _register(cid, title, runtime, min_n, fn):
    REGISTRY[cid] = Claim(cid, title, runtime, min_n, fn)


_register("plin", "linear structures are P_n and C_4", "seconds", 4, claim_plin)
_register("tqus1", "tau(n,0) = max(1, n-4)", "seconds", 3, claim_tqus1)
_register("tqus2", "regular extremal structures", "seconds", 3, claim_tqus2)
_register("tqus3", "orderable extremal structures", "seconds", 3, claim_tqus3)
_register("lsmallgr", "quasilinear structures of order <= 7", "seconds", 3, claim_lsmallgr)
_register("tlinsize1", "co-size n - c", "seconds", 3, claim_tlinsize1)
_register("tlinsize3", "tau(n, n-2) = n-1 for small n", "seconds", 4, claim_tlinsize3)
_register("tlinsize2", "co-size 2n - c", "seconds", 3, claim_tlinsize2)
_register("cn5", "regular B(5,2) has tight-star hypergraphs", "seconds", 5, claim_cn5)
_register("crn7", "B(7,3) has tight-star hypergraphs", "seconds", 7, claim_crn7)
_register("cmetr7", "metrizability of the three order-7 hypergraphs", "seconds", 7, claim_cmetr7)
_register("fano", "Fano-plane hypergraph is not metrizable", "seconds", 7, claim_fano)
_register("otstar", "degree condition gives a tight star", "seconds", 3, claim_otstar)
_register("okern", "one cyclic line through the kernel", "seconds", 6, claim_okern)
_register("o6qlin", "kernel position determines the order-6 class", "seconds", 6, claim_o6qlin)
_register("lcyc", "no co-size 1 beyond order 5", "seconds", 6, claim_lcyc)
_register("lgen2a", "extremal hypergraphs are (tight) delta-stars", "seconds", 3, claim_lgen2a)
_register("lgen3", "tight-star structures are family members", "seconds", 3, claim_lgen3)
_register("cnktight", "tight k-star probe", "seconds", 3, claim_cnktight)
_register("corollaries", "gamma/sigma on the probed range", "seconds", 3, claim_corollaries)


@dataclass(frozen=True)
class VerifyConfig:
    """Range and resources for a verification run."""

    max_n: int = 7
    long_run: bool = False
    workers: int = 1
    out: Path | None = None

    def claim_ids(self) -> list[str]:
        return [cid for cid, c in REGISTRY.items() if c.min_n <= self.max_n]


def verify(claim_id: str, max_n: int = 7, long_run: bool = False) -> ClaimReport:
    if claim_id not in REGISTRY:
        raise KeyError(f"unknown claim {claim_id!r}; known: {', '.join(REGISTRY)}")
    t0 = time.perf_counter()
    rep = REGISTRY[claim_id].fn(max_n, long_run)
    rep.runtime = time.perf_counter() - t0
    return rep


def verify_all(config: VerifyConfig | None = None) -> list[ClaimReport]:
    config = config or VerifyConfig()
    return [verify(cid, config.max_n, config.long_run) for cid in config.claim_ids()]
