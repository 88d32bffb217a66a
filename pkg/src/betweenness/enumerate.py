"""Exhaustive, isomorph-reduced enumeration of almost-metrizable structures.

Triangle sets are generated one orbit at a time (canonical augmentation of
3-uniform hypergraphs); every orbit representative is completed with all
middle assignments by propagation search and the results are merged by
canonical form.  Labeled counts follow from orbit sizes: each completion of
a representative ``H`` stands for ``n! / |Aut(H)|`` labeled structures.
"""

from __future__ import annotations

import enum
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from pathlib import Path

from ._guard import check_guard, effective_limit
from .core import BetweennessStructure, all_triples, is_orderable
from .iso import canonize, hypergraph_canonical
from .search import completions

log = logging.getLogger(__name__)

EXHAUSTIVE_MAX_N = 7
LONG_RUN_MAX_N = 8


class PropertyFilter(enum.Enum):
    TRIVIAL = "trivial"
    REGULAR = "regular"
    ORDERABLE = "orderable"

    @classmethod
    def parse(cls, s: "str | PropertyFilter") -> "PropertyFilter":
        return s if isinstance(s, cls) else cls(str(s).lower())


@dataclass(frozen=True)
class ClassRecord:
    form: bytes
    representative: BetweennessStructure
    labeled_count: int


@dataclass
class ClassificationResult:
    n: int
    cosize: int | tuple[int, int]
    filter: PropertyFilter
    classes: list[ClassRecord] = field(default_factory=list)
    wall_time: float = 0.0

    def forms(self) -> set[bytes]:
        return {c.form for c in self.classes}

    def structures(self) -> list[BetweennessStructure]:
        return [c.representative for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)


def _guard(n: int, long_run: bool) -> None:
    limit = LONG_RUN_MAX_N if long_run else EXHAUSTIVE_MAX_N
    check_guard(n, limit, "exhaustive enumeration")


@lru_cache(maxsize=None)
def hypergraph_orbits(n: int, m: int) -> tuple[tuple[tuple[tuple[int, int, int], ...], int], ...]:
    """One representative per isomorphism class of ``m``-edge 3-graphs on ``n`` points.

    Returns ``(edges, |Aut|)`` pairs in canonical-form order.
    """
    total = comb(n, 3)
    if m < 0 or m > total:
        return ()
    if m == 0:
        c = hypergraph_canonical(n, [])
        return (((), c.automorphisms),)
    found: dict[bytes, tuple] = {}
    triples = all_triples(n)
    for edges, _ in hypergraph_orbits(n, m - 1):
        es = set(edges)
        for t in triples:
            if t in es:
                continue
            new = edges + (t,)
            c = hypergraph_canonical(n, new)
            if c.form not in found:
                lab = c.labeling
                canon_edges = tuple(sorted(tuple(sorted(lab[p] for p in e)) for e in new))
                found[c.form] = (canon_edges, c.automorphisms)
    return tuple(found[f] for f in sorted(found))


def _accept_for(flt: PropertyFilter):
    if flt is PropertyFilter.ORDERABLE:
        return lambda b: is_orderable(b) is not None
    return None


def complete_representative(n: int, edges, flt: PropertyFilter, first_only: bool = False):
    """Classes (form -> (canonical structure, leaf count)) completing one triangle set."""
    out: dict[bytes, list] = {}
    for b in completions(n, edges, regular=flt is PropertyFilter.REGULAR, accept=_accept_for(flt)):
        rep, c = canonize(b)
        if c.form in out:
            out[c.form][1] += 1
        else:
            out[c.form] = [rep, 1]
        if first_only:
            break
    return out


def _work(args):
    n, edges, flt = args
    return {f: (rep.mids, k) for f, (rep, k) in complete_representative(n, edges, flt).items()}


def enumerate_structures(
    n: int,
    cosize: int | tuple[int, int],
    flt: PropertyFilter | str = PropertyFilter.TRIVIAL,
    *,
    long_run: bool = False,
    workers: int = 1,
    checkpoint: Path | None = None,
) -> ClassificationResult:
    """All structures of order ``n`` with the given co-size, up to isomorphism.

    ``cosize`` is an exact value or an inclusive ``(lo, hi)`` range.
    """
    _guard(n, long_run)
    flt = PropertyFilter.parse(flt)
    t0 = time.perf_counter()
    lo, hi = (cosize, cosize) if isinstance(cosize, int) else cosize
    merged: dict[bytes, list] = {}
    state = _load_checkpoint(checkpoint, n, lo, hi, flt)
    for m in range(max(lo, 0), min(hi, comb(n, 3)) + 1):
        orbits = hypergraph_orbits(n, m)
        jobs = [(i, (n, edges, flt), factorial(n) // aut) for i, (edges, aut) in enumerate(orbits)]
        pending = [j for j in jobs if (m, j[0]) not in state["done"]]
        if workers > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(_work, [j[1] for j in pending], chunksize=4))
        else:
            results = (_work(j[1]) for j in pending)
        for (i, _, weight), res in zip(pending, results):
            for f, (mids, k) in res.items():
                _merge(state["classes"], f, mids, k * weight)
            state["done"].add((m, i))
            _save_checkpoint(checkpoint, state, n, lo, hi, flt)
        log.debug("n=%d m=%d: %d triangle-set orbits", n, m, len(orbits))
    merged = state["classes"]
    classes = [
        ClassRecord(f, BetweennessStructure(n, tuple(merged[f][0])), merged[f][1])
        for f in sorted(merged)
    ]
    return ClassificationResult(n, cosize, flt, classes, time.perf_counter() - t0)


def _merge(classes: dict, form: bytes, mids, count: int) -> None:
    if form in classes:
        classes[form][1] += count
    else:
        classes[form] = [list(mids), count]


def _load_checkpoint(path, n, lo, hi, flt):
    state = {"done": set(), "classes": {}}
    if path is None or not Path(path).exists():
        return state
    data = json.loads(Path(path).read_text())
    if (data["n"], data["lo"], data["hi"], data["filter"]) != (n, lo, hi, flt.value):
        raise ValueError(f"checkpoint {path} belongs to a different run")
    state["done"] = {tuple(x) for x in data["done"]}
    state["classes"] = {bytes.fromhex(f): [v[0], v[1]] for f, v in data["classes"].items()}
    return state


def _save_checkpoint(path, state, n, lo, hi, flt):
    if path is None:
        return
    data = {
        "n": n, "lo": lo, "hi": hi, "filter": flt.value,
        "done": sorted(state["done"]),
        "classes": {f.hex(): v for f, v in state["classes"].items()},
    }
    tmp = Path(str(path) + ".tmp")
    tmp.write_text(json.dumps(data))
    tmp.replace(path)


def find_structure(
    n: int, m: int, flt: PropertyFilter | str = PropertyFilter.TRIVIAL, *, long_run: bool = False
) -> BetweennessStructure | None:
    """Some structure of order ``n`` and co-size ``m`` passing the filter, or None."""
    _guard(n, long_run)
    flt = PropertyFilter.parse(flt)
    if m < 0 or m > comb(n, 3):
        return None
    for edges, _ in hypergraph_orbits(n, m):
        for b in completions(n, edges, regular=flt is PropertyFilter.REGULAR, accept=_accept_for(flt)):
            return b
    return None


def tau(n: int, k: int, flt: PropertyFilter | str = PropertyFilter.TRIVIAL, *, long_run: bool = False) -> int | None:
    """Smallest co-size above ``k`` realized at order ``n`` under the filter."""
    _guard(n, long_run)
    for m in range(k + 1, comb(n, 3) + 1):
        if find_structure(n, m, flt, long_run=long_run) is not None:
            return m
    return None


def tau_second(n: int, flt: PropertyFilter | str = PropertyFilter.TRIVIAL, *, long_run: bool = False) -> int | None:
    """Smallest co-size above ``n - 2`` at order ``n``."""
    if n < 4:
        raise ValueError("tau_second needs n >= 4")
    return tau(n, n - 2, flt, long_run=long_run)


@dataclass(frozen=True)
class ProbeRow:
    n: int
    cosize: int
    nonempty: bool
    witness: BetweennessStructure | None


def probe_gamma_sigma(k: int, c: int, n_range, *, long_run: bool = False) -> list[ProbeRow]:
    """Emptiness of the co-size ``k*n - c`` level for every ``n`` in range."""
    rows = []
    for n in n_range:
        _guard(n, long_run)
        m = k * n - c
        w = find_structure(n, m, long_run=long_run) if 0 <= m <= comb(n, 3) else None
        rows.append(ProbeRow(n, m, w is not None, w))
    return rows


def max_exhaustive_n() -> int:
    return effective_limit(EXHAUSTIVE_MAX_N)
