"""Canonical forms for betweenness structures and triangle hypergraphs.

The canonical form is the lexicographically smallest state sequence over
all relabelings that respect an iso-invariant ordered partition of the
points.  The partition comes from color refinement seeded with (triangle
degree, middle degree).  Labelings are built one position at a time; in
colex order the states of all triples whose largest label is ``k`` are
fixed once position ``k`` is filled, so prefixes can be compared early.
Points whose transposition is an automorphism (twins) are placed in index
order only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

from ._guard import check_guard
from .core import TRIANGLE, BetweennessStructure, all_triples

NOMID = -2  # collinear triple without a recorded middle (hypergraph non-edge)

_CODE_TRIANGLE = 3


@dataclass(frozen=True)
class Canonical:
    form: bytes
    labeling: tuple[int, ...]  # labeling[p] = new label of original point p
    automorphisms: int


def _table(n: int, mids: Sequence[int]):
    t3 = {}
    for (i, j, k), m in zip(all_triples(n), mids):
        for p in itertools.permutations((i, j, k)):
            t3[p] = m
    return t3


def _refine(n: int, mids: Sequence[int]) -> list[int]:
    tris = all_triples(n)
    color = [0] * n
    sig0 = []
    for p in range(n):
        tdeg = sum(1 for t, m in zip(tris, mids) if m == TRIANGLE and p in t)
        mdeg = sum(1 for m in mids if m == p)
        sig0.append((tdeg, mdeg))
    color = _compress(sig0)
    by_point = [[] for _ in range(n)]
    for t, m in zip(tris, mids):
        for p in t:
            by_point[p].append((t, m))

    def role(q, m):
        if m == TRIANGLE:
            return 0
        if m == NOMID:
            return 1
        return 2 if q == m else 3

    while True:
        sig = []
        for p in range(n):
            items = []
            for t, m in by_point[p]:
                others = tuple(sorted((color[q], role(q, m)) for q in t if q != p))
                items.append((role(p, m), others))
            items.sort()
            sig.append((color[p], tuple(items)))
        new = _compress(sig)
        if len(set(new)) == len(set(color)):
            return new
        color = new


def _compress(sig: list) -> list[int]:
    order = {s: c for c, s in enumerate(sorted(set(sig)))}
    return [order[s] for s in sig]


def _twin_classes(n: int, mids: Sequence[int], color: list[int]) -> list[int]:
    """``rep[p]``: smallest point in the twin class of ``p``."""
    rep = list(range(n))
    t3 = _table(n, mids)
    for p, q in itertools.combinations(range(n), 2):
        if color[p] != color[q] or rep[q] != q:
            continue
        swap = {p: q, q: p}
        ok = True
        for (i, j, k), m in zip(all_triples(n), mids):
            if p not in (i, j, k) and q not in (i, j, k):
                continue
            img = (swap.get(i, i), swap.get(j, j), swap.get(k, k))
            mm = t3[img]
            want = swap.get(m, m) if m >= 0 else m
            if mm != want:
                ok = False
                break
        if ok:
            rep[q] = rep[p]
    return rep


def canonical(n: int, mids: Sequence[int]) -> Canonical:
    """Canonical labeling of a state sequence (middles, ``TRIANGLE`` or ``NOMID``)."""
    color = _refine(n, mids)
    rep = _twin_classes(n, mids, color)
    t3 = _table(n, mids)
    # points of each cell, cells in color order
    slots = sorted(range(n), key=lambda p: (color[p], p))
    slot_color = [color[p] for p in slots]

    inv: list[int] = []  # inv[position] = original point
    placed = [False] * n
    best: list[tuple[int, ...]] | None = None
    best_lab: list[int] | None = None
    count = 0

    def block(k: int) -> tuple[int, ...]:
        pk = inv[k]
        out = []
        for b in range(1, k):
            pb = inv[b]
            for a in range(b):
                pa = inv[a]
                m = t3[(pa, pb, pk)]
                if m == TRIANGLE:
                    out.append(_CODE_TRIANGLE)
                elif m == NOMID:
                    out.append(0)
                elif m == pa:
                    out.append(0)
                elif m == pb:
                    out.append(1)
                else:
                    out.append(2)
        return tuple(out)

    prefix: list[tuple[int, ...]] = []
    version = 0

    def rec(k: int, less: bool, ver: int) -> None:
        nonlocal best, best_lab, count, version
        if best is not None and ver != version:
            # best changed below an ancestor: re-rank this prefix against it
            head = best[:k]
            if prefix > head:
                return
            less = prefix < head
        if k == n:
            if best is None or less:
                best = list(prefix)
                best_lab = list(inv)
                count = 1
                version += 1
            else:
                count += 1
            return
        want = slot_color[k]
        for p in range(n):
            if placed[p] or color[p] != want:
                continue
            r = rep[p]
            if r != p and any(not placed[q] for q in range(r, p) if rep[q] == r):
                continue
            if best is not None and ver != version:
                head = best[:k]
                if prefix > head:
                    return
                less = prefix < head
                ver = version
            placed[p] = True
            inv.append(p)
            blk = block(k)
            nless = less
            prune = False
            if best is not None and not less:
                if blk > best[k]:
                    prune = True
                elif blk < best[k]:
                    nless = True
            if not prune:
                prefix.append(blk)
                rec(k + 1, nless, version)
                prefix.pop()
            inv.pop()
            placed[p] = False

    rec(0, False, version)
    codes = [c for blk in best for c in blk]
    labeling = [0] * n
    for pos, p in enumerate(best_lab):
        labeling[p] = pos
    twins = {}
    for p in range(n):
        twins[rep[p]] = twins.get(rep[p], 0) + 1
    aut = count
    for size in twins.values():
        aut *= factorial(size)
    return Canonical(bytes([n]) + bytes(codes), tuple(labeling), aut)


def canonical_form(b: BetweennessStructure) -> bytes:
    check_guard(b.n, 10, "canonical_form")
    return canonical(b.n, b.mids).form


def canonize(b: BetweennessStructure) -> tuple[BetweennessStructure, Canonical]:
    """Canonical representative of the class of ``b`` and the labeling data."""
    check_guard(b.n, 10, "canonical_form")
    c = canonical(b.n, b.mids)
    return b.relabel(c.labeling), c


def automorphism_count(b: BetweennessStructure) -> int:
    return canonical(b.n, b.mids).automorphisms


def is_isomorphic(b1: BetweennessStructure, b2: BetweennessStructure) -> bool:
    if b1.n != b2.n:
        raise ValueError("isomorphism test needs equal orders")
    if b1.mids.count(TRIANGLE) != b2.mids.count(TRIANGLE):
        return False
    return canonical_form(b1) == canonical_form(b2)


def dedupe(structures: Iterable[BetweennessStructure]) -> list[tuple[BetweennessStructure, int]]:
    """First-seen representatives of each isomorphism class with multiplicities."""
    seen: dict[bytes, int] = {}
    out: list[list] = []
    for b in structures:
        f = canonical_form(b)
        if f in seen:
            out[seen[f]][1] += 1
        else:
            seen[f] = len(out)
            out.append([b, 1])
    return [(b, k) for b, k in out]


def hypergraph_mids(n: int, edges: Iterable[Iterable[int]]) -> list[int]:
    es = {tuple(sorted(e)) for e in edges}
    return [TRIANGLE if t in es else NOMID for t in all_triples(n)]


def hypergraph_canonical(n: int, edges: Iterable[Iterable[int]]) -> Canonical:
    check_guard(n, 10, "hypergraph canonical form")
    return canonical(n, hypergraph_mids(n, edges))


def brute_force_isomorphic(b1: BetweennessStructure, b2: BetweennessStructure) -> bool:
    """Reference check by trying every permutation (tiny ``n`` only)."""
    if b1.n != b2.n:
        return False
    return any(b1.relabel(p) == b2 for p in itertools.permutations(range(b1.n)))
