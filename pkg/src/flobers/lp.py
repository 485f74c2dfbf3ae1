"""Exact feasibility of rational linear systems with free variables.

Equalities are eliminated by Gaussian substitution; the remaining
inequalities go through phase 1 of the simplex method with Bland's rule,
so degenerate pivots cannot cycle. Arithmetic is done in ``gmpy2.mpq``
and results are handed back as :class:`fractions.Fraction`.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from gmpy2 import mpq

Row = Sequence[Fraction]
ZERO, ONE = mpq(0), mpq(1)


def _q(x) -> mpq:
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def find_point(n: int, equalities: Sequence[tuple[Row, Fraction]] = (),
               lower_bounds: Sequence[tuple[Row, Fraction]] = ()) -> tuple[Fraction, ...] | None:
    """Return some ``x`` in Q^n with ``a.x == b`` for every equality and
    ``a.x >= b`` for every lower bound, or ``None`` if there is none.
    """
    eqs = [([_q(a) for a in row], _q(b)) for row, b in equalities]
    ges = [([_q(a) for a in row], _q(b)) for row, b in lower_bounds]

    # x = base + sum_k y_k * direction_k over the solutions of the equalities
    param = _solve_equalities(n, eqs)
    if param is None:
        return None
    base, directions = param
    k = len(directions)
    reduced = []
    for a, b in ges:
        coeffs = [sum((x * y for x, y in zip(a, d)), ZERO) for d in directions]
        reduced.append((coeffs, b - sum((x * y for x, y in zip(a, base)), ZERO)))
    y = _phase_one(k, reduced)
    if y is None:
        return None
    x = list(base)
    for yk, d in zip(y, directions):
        if yk:
            x = [xi + yk * di for xi, di in zip(x, d)]
    return tuple(Fraction(int(v.numerator), int(v.denominator)) for v in x)


def _solve_equalities(n, eqs):
    """Particular solution and null-space basis of ``A x = b``, or ``None``."""
    rows = [list(a) + [b] for a, b in eqs]
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[n] != 0 for row in rows[r:]):
        return None
    base = [ZERO] * n
    for i, c in enumerate(pivots):
        base[c] = rows[i][n]
    directions = []
    for f in (c for c in range(n) if c not in pivots):
        d = [ZERO] * n
        d[f] = ONE
        for i, c in enumerate(pivots):
            d[c] = -rows[i][f]
        directions.append(d)
    return base, directions


def _phase_one(k: int, ges) -> list | None:
    """Some ``y`` in Q^k with ``a.y >= b`` for all ``(a, b)`` in ``ges``."""
    m = len(ges)
    if m == 0:
        return [ZERO] * k
    # y = y_plus - y_minus >= 0, slack s >= 0:  a.y_plus - a.y_minus - s = b
    nvar = 2 * k + m
    width = nvar + m
    tab = []
    for i, (a, b) in enumerate(ges):
        row = list(a) + [-x for x in a] + [ZERO] * m
        row[2 * k + i] = -ONE
        if b < 0:
            row = [-x for x in row]
            b = -b
        art = [ZERO] * m
        art[i] = ONE
        tab.append(row + art + [b])
    basis = [nvar + i for i in range(m)]
    cost = [ZERO] * (width + 1)
    for row in tab:
        for j in range(nvar):
            cost[j] -= row[j]
        cost[width] -= row[width]

    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    leave, best = i, ratio
        if leave is None:
            raise ArithmeticError("unbounded phase-1 problem")
        _pivot(tab, cost, leave, enter)
        basis[leave] = enter

    if cost[width] != 0:
        return None
    sol = [ZERO] * width
    for i, j in enumerate(basis):
        sol[j] = tab[i][width]
    return [sol[i] - sol[k + i] for i in range(k)]


def _pivot(tab, cost, r: int, c: int) -> None:
    prow = tab[r]
    inv = ONE / prow[c]
    prow[:] = [x * inv for x in prow]
    nz = [j for j, x in enumerate(prow) if x]
    for row in tab:
        if row is not prow and row[c] != 0:
            f = row[c]
            for j in nz:
                row[j] -= f * prow[j]
    if cost[c] != 0:
        f = cost[c]
        for j in nz:
            cost[j] -= f * prow[j]


def feasible(n: int, equalities=(), lower_bounds=()) -> bool:
    return find_point(n, equalities, lower_bounds) is not None
