"""Metrizability of structures (exact LP) and of triangle hypergraphs (search + LP).

A structure ``b`` is metrizable iff the system

* ``d_xz = d_xy + d_yz`` for every collinear triple with middle ``y``,
* ``d_xy + d_yz - d_xz >= 1`` (all three rotations) for every triangle,
* ``d_p >= 1`` for every pair,

has a rational solution: strict inequalities become ``>= 1`` after scaling.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from . import lp
from ._guard import check_guard
from .core import TRIANGLE, BetweennessStructure, all_triples
from .graphs import RationalMetric
from .hyper import TriangleHypergraph
from .iso import canonize
from .lp import InconsistentEqualities
from .search import completions

log = logging.getLogger(__name__)

Pair = tuple[int, int]

METRIZE_MAX_N = 9

__all__ = [
    "FeasibilitySystem", "InconsistentEqualities", "MetrizationVerdict", "Reason",
    "Realization", "solve_feasibility", "feasibility_system", "metrize_structure",
    "metrize_hypergraph", "validate_certificate",
]


def _pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass
class FeasibilitySystem:
    """Distance variables, one per unordered pair of ``0..n-1``.

    ``equalities`` holds ``(xz, xy, yz)`` for ``d_xz = d_xy + d_yz``;
    ``slacks`` holds ``(xy, yz, xz)`` for ``d_xy + d_yz - d_xz >= 1``;
    every variable is bounded below by 1.  ``fixed`` pins single variables.
    """

    n: int
    equalities: list[tuple[Pair, Pair, Pair]] = field(default_factory=list)
    slacks: list[tuple[Pair, Pair, Pair]] = field(default_factory=list)
    fixed: list[tuple[Pair, Fraction]] = field(default_factory=list)

    @property
    def pairs(self) -> list[Pair]:
        return list(itertools.combinations(range(self.n), 2))


def feasibility_system(b: BetweennessStructure) -> FeasibilitySystem:
    sys = FeasibilitySystem(b.n)
    for (i, j, k), m in zip(all_triples(b.n), b.mids):
        if m == TRIANGLE:
            for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                # y is the apex opposite to x-z
                sys.slacks.append((_pair(x, y), _pair(y, z), _pair(x, z)))
        else:
            x, z = (p for p in (i, j, k) if p != m)
            sys.equalities.append((_pair(x, z), _pair(x, m), _pair(m, z)))
    return sys


def solve_feasibility(sys: FeasibilitySystem) -> dict[Pair, Fraction] | None:
    """Exact solution of the system, or None when it is infeasible.

    Raises ``InconsistentEqualities`` when the equality constraints alone
    (including ``fixed``) have no solution.
    """
    pairs = sys.pairs
    idx = {p: k for k, p in enumerate(pairs)}
    one = Fraction(1)
    eqs = []
    for xz, xy, yz in sys.equalities:
        row: dict[int, Fraction] = {}
        for p, c in ((xz, one), (xy, -one), (yz, -one)):
            row[idx[p]] = row.get(idx[p], 0) + c
        eqs.append((row, Fraction(0)))
    for p, v in sys.fixed:
        eqs.append(({idx[p]: one}, Fraction(v)))
    ineqs = []
    for xy, yz, xz in sys.slacks:
        row = {}
        for p, c in ((xy, one), (yz, one), (xz, -one)):
            row[idx[p]] = row.get(idx[p], 0) + c
        ineqs.append((row, one))
    x = lp.solve(len(pairs), eqs, ineqs, lower=one)
    if x is None:
        log.debug("infeasible system: n=%d, %d equalities, %d slacks",
                  sys.n, len(sys.equalities), len(sys.slacks))
        return None
    return dict(zip(pairs, x))


def validate_certificate(b: BetweennessStructure, d: RationalMetric) -> list[str]:
    """Problems with ``d`` as a metric inducing exactly ``b`` (empty list when valid).

    Deliberately self-contained: shares nothing with the LP or with ``induce``.
    """
    n = b.n
    rows = d.d
    errs = []
    if len(rows) != n or any(len(r) != n for r in rows):
        return [f"matrix is not {n}x{n}"]
    for x in range(n):
        if rows[x][x] != 0:
            errs.append(f"d({x},{x}) != 0")
        for y in range(x + 1, n):
            if rows[x][y] != rows[y][x]:
                errs.append(f"d({x},{y}) not symmetric")
            if not rows[x][y] > 0:
                errs.append(f"d({x},{y}) not positive")
    if errs:
        return errs
    for x, y, z in itertools.permutations(range(n), 3):
        if rows[x][z] > rows[x][y] + rows[y][z]:
            errs.append(f"triangle inequality fails at {x},{y},{z}")
    k = 0
    for c in range(n):
        for bb in range(c):
            for a in range(bb):
                # same colex order as the structure's storage
                found = [m for m, (u, v) in ((a, (bb, c)), (bb, (a, c)), (c, (a, bb)))
                         if rows[u][v] == rows[u][m] + rows[m][v]]
                want = b.mids[k]
                got = found[0] if len(found) == 1 else (TRIANGLE if not found else None)
                if got is None or got != want:
                    errs.append(f"triple {(a, bb, c)}: metric gives {found or 'triangle'}, structure has {want}")
                k += 1
    return errs


def metric_from_solution(n: int, sol: dict[Pair, Fraction]) -> RationalMetric:
    d = [[Fraction(0)] * n for _ in range(n)]
    for (a, b), v in sol.items():
        d[a][b] = d[b][a] = v
    return RationalMetric(tuple(tuple(r) for r in d))


def metrize_structure(b: BetweennessStructure) -> RationalMetric | None:
    """A metric inducing ``b`` with every distance and triangle slack at least 1."""
    sol = solve_feasibility(feasibility_system(b))
    if sol is None:
        return None
    m = metric_from_solution(b.n, sol)
    errs = validate_certificate(b, m)
    if errs:
        raise AssertionError("LP solution failed validation: " + "; ".join(errs[:3]))
    return m


class Reason(enum.Enum):
    NO_ALMOST_METRIZABLE = "NoAlmostMetrizableAssignment"
    ALL_LP_INFEASIBLE = "AllAssignmentsLPInfeasible"


@dataclass(frozen=True)
class Realization:
    """One isomorphism class of almost-metrizable structures realizing a hypergraph."""

    structure: BetweennessStructure
    metric: RationalMetric | None
    assignments: int  # labeled completions of the fixed hypergraph in this class

    @property
    def metrizable(self) -> bool:
        return self.metric is not None


@dataclass
class MetrizationVerdict:
    metrizable: bool
    metric: RationalMetric | None = None
    structure: BetweennessStructure | None = None
    reason: Reason | None = None
    realizations: list[Realization] | None = None
    assignments_searched: int = 0

    def label(self) -> str:
        return "Metrizable" if self.metrizable else f"NotMetrizable({self.reason.value})"


def _leaves(h: TriangleHypergraph) -> Iterator[BetweennessStructure]:
    return completions(h.n, h.edges)


def metrize_hypergraph(h: TriangleHypergraph, collect_all: bool = False) -> MetrizationVerdict:
    """Decide whether some metric has exactly ``h`` as its triangle hypergraph.

    Completions are grouped by isomorphism class before the LP runs, since
    metrizability is a class invariant.
    """
    check_guard(h.n, METRIZE_MAX_N, "hypergraph metrization")
    classes: dict[bytes, list] = {}
    order: list[bytes] = []
    leaves = 0
    first = None
    for b in _leaves(h):
        leaves += 1
        _, c = canonize(b)
        if c.form in classes:
            classes[c.form][2] += 1
            continue
        m = metrize_structure(b)
        classes[c.form] = [b, m, 1]
        order.append(c.form)
        if m is not None and first is None:
            first = (b, m)
            if not collect_all:
                break
    reals = [Realization(*classes[f]) for f in order] if collect_all else None
    if first is not None:
        return MetrizationVerdict(True, first[1], first[0], None, reals, leaves)
    reason = Reason.NO_ALMOST_METRIZABLE if leaves == 0 else Reason.ALL_LP_INFEASIBLE
    return MetrizationVerdict(False, None, None, reason, reals, leaves)


def brute_force_metrizable(h: TriangleHypergraph) -> bool:
    """Reference decision: every middle assignment, no propagation (tiny ``n`` only)."""
    from .core import check_frp

    check_guard(h.n, 5, "brute-force metrization")
    triples = all_triples(h.n)
    free = [r for r, t in enumerate(triples) if t not in h.edges]
    for choice in itertools.product(range(3), repeat=len(free)):
        mids = [TRIANGLE] * len(triples)
        for r, c in zip(free, choice):
            mids[r] = triples[r][c]
        b = BetweennessStructure(h.n, tuple(mids))
        if check_frp(b) and metrize_structure(b) is not None:
            return True
    return False


def realizing_structures(h: TriangleHypergraph) -> Iterable[BetweennessStructure]:
    """Every almost-metrizable structure with triangle hypergraph ``h`` (labeled)."""
    return _leaves(h)
