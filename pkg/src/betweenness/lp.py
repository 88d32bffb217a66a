"""Exact rational linear feasibility.

Equalities are eliminated by Gauss-Jordan reduction; the remaining
inequalities over the free variables go through a phase-one simplex in
dictionary form with Bland's rule.  Everything is ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Row = dict[int, Fraction]


class InconsistentEqualities(ValueError):
    """The equality subsystem alone has no solution."""


def _rref(eqs: list[tuple[Row, Fraction]], nvars: int):
    """Reduce ``sum a_j x_j = b`` rows; returns {pivot var: (const, {free var: coef})}."""
    rows = [(dict(a), Fraction(b)) for a, b in eqs]
    pivots: dict[int, tuple[Row, Fraction]] = {}
    for a, b in rows:
        # substitute previous pivots
        a = dict(a)
        for p, (pa, pb) in pivots.items():
            c = a.pop(p, None)
            if c:
                for j, v in pa.items():
                    a[j] = a.get(j, 0) - c * v
                b -= c * pb
        a = {j: v for j, v in a.items() if v != 0}
        if not a:
            if b != 0:
                raise InconsistentEqualities("0 = %s" % b)
            continue
        p = min(a)
        c = a.pop(p)
        pa = {j: v / c for j, v in a.items()}
        pb = b / c
        # p = pb - sum pa_j x_j ; back-substitute into existing pivots
        for q, (qa, qb) in list(pivots.items()):
            cq = qa.pop(p, None)
            if cq:
                for j, v in pa.items():
                    qa[j] = qa.get(j, 0) - cq * v
                qb -= cq * pb
                pivots[q] = ({j: v for j, v in qa.items() if v != 0}, qb)
        pivots[p] = (pa, pb)
    # convert "x_p + sum pa_j x_j = pb" into x_p = pb - sum pa_j x_j
    out = {}
    for p, (pa, pb) in pivots.items():
        out[p] = (pb, {j: -v for j, v in pa.items()})
    return out


def _phase_one(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """A point with ``A x <= b, x >= 0`` or None (Chvatal's auxiliary problem)."""
    m = len(A)
    nx = len(A[0]) if A else 0
    if all(bi >= 0 for bi in b):
        return [Fraction(0)] * nx
    x0 = nx + m
    nonbasic = list(range(nx)) + [x0]
    basic = [nx + i for i in range(m)]
    # x_B[i] = const[i] + sum_j D[i][j] * x_N[j]
    D = [[-A[i][j] for j in range(nx)] + [Fraction(1)] for i in range(m)]
    const = list(b)
    obj = [Fraction(0)] * nx + [Fraction(-1)]
    obj_c = Fraction(0)

    def pivot(r: int, e: int) -> None:
        nonlocal obj_c
        row = D[r]
        a = row[e]
        # solve row r for the entering variable
        new = [-v / a for v in row]
        new[e] = 1 / a
        newc = -const[r] / a
        D[r] = new
        const[r] = newc
        for i in range(m):
            if i == r:
                continue
            c = D[i][e]
            if c == 0:
                continue
            Di = D[i]
            for j in range(len(Di)):
                if j == e:
                    Di[j] = c * new[e]
                elif new[j]:
                    Di[j] += c * new[j]
            const[i] += c * newc
        c = obj[e]
        if c:
            for j in range(len(obj)):
                obj[j] = c * new[e] if j == e else obj[j] + c * new[j]
            obj_c += c * newc
        basic[r], nonbasic[e] = nonbasic[e], basic[r]

    r = min(range(m), key=lambda i: (const[i], basic[i]))
    pivot(r, nonbasic.index(x0))
    while True:
        cands = [j for j in range(len(nonbasic)) if obj[j] > 0]
        if not cands:
            break
        e = min(cands, key=lambda j: nonbasic[j])
        best = None
        for i in range(m):
            if D[i][e] < 0:
                ratio = const[i] / -D[i][e]
                key = (ratio, basic[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:  # cannot happen: the auxiliary objective is bounded by 0
            raise AssertionError("unbounded phase-one problem")
        pivot(best[1], e)
    if obj_c < 0:
        return None
    x = [Fraction(0)] * nx
    for i, v in enumerate(basic):
        if v < nx:
            x[v] = const[i]
    return x


def solve(
    nvars: int,
    equalities: Sequence[tuple[Row, Fraction]],
    inequalities: Sequence[tuple[Row, Fraction]],
    lower: Fraction | None = None,
) -> list[Fraction] | None:
    """Exact point with ``a.x = b`` for every equality and ``a.x >= b`` for every inequality.

    ``lower`` (when given) is a common lower bound on every variable, used
    to shift the free variables to nonnegative ones; without it, each free
    variable is split into two nonnegative parts.
    """
    subs = _rref([(dict(a), Fraction(b)) for a, b in equalities], nvars)
    free = [j for j in range(nvars) if j not in subs]
    col = {j: k for k, j in enumerate(free)}

    def expand(a: Row) -> tuple[Row, Fraction]:
        out: Row = {}
        c0 = Fraction(0)
        for j, v in a.items():
            if j in subs:
                pc, pa = subs[j]
                c0 += v * pc
                for f, w in pa.items():
                    out[f] = out.get(f, 0) + v * w
            else:
                out[j] = out.get(j, 0) + v
        return out, c0

    ineqs = [(*expand(a), Fraction(b)) for a, b in inequalities]
    if lower is not None:
        ineqs += [(*expand({j: Fraction(1)}), Fraction(lower)) for j in range(nvars)]
    # a.x + c0 >= b  ->  -a.x <= c0 - b, in shifted/split free variables
    shift = Fraction(lower) if lower is not None else None
    width = len(free) if shift is not None else 2 * len(free)
    A, rhs = [], []
    for a, c0, bb in ineqs:
        row = [Fraction(0)] * width
        r = c0 - bb
        for f, v in a.items():
            if v == 0:
                continue
            k = col[f]
            if shift is not None:
                row[k] -= v
                r += v * shift
            else:
                row[2 * k] -= v
                row[2 * k + 1] += v
        A.append(row)
        rhs.append(r)
    if not A:
        y = [Fraction(0)] * width
    else:
        y = _phase_one(A, rhs)
        if y is None:
            return None
    vals: dict[int, Fraction] = {}
    for f, k in col.items():
        vals[f] = (shift + y[k]) if shift is not None else (y[2 * k] - y[2 * k + 1])
    x = [Fraction(0)] * nvars
    for j in range(nvars):
        if j in vals:
            x[j] = vals[j]
        else:
            pc, pa = subs[j]
            x[j] = pc + sum(w * vals[f] for f, w in pa.items())
    return x
