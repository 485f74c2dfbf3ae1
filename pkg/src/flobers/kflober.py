"""Grothendieck-group shadow of the Atiyah flop.

``K(X_-) = K(X_+) = Q^2`` with basis ``[L(0)], [L(1)]`` (line bundles
pulled back from P^1), and ``K(X_0) = Q^4`` with basis ``[L0(i, j)]`` for
``(i, j) = (0,0), (1,0), (0,1), (1,1)`` pulled back from P^1 x P^1.
"""
from __future__ import annotations

from fractions import Fraction

from .arrangement import build
from .diagram import HyperbolicDiagram, build_diagram
from .linalg import RationalMatrix

P1_BASIS = ("L(0)", "L(1)")
P1XP1_BASIS = ("L0(0,0)", "L0(1,0)", "L0(0,1)", "L0(1,1)")


def reduce_p1(i: int) -> tuple[Fraction, Fraction]:
    """Coordinates of ``[L(i)]`` over ``[L(0)], [L(1)]``.

    Uses the Koszul relation ``[L(i)] - 2[L(i+1)] + [L(i+2)] = 0`` stepwise
    and checks the result against the closed form ``(1 - i, i)``.
    """
    prev, cur = (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))  # L(0), L(1)
    if i >= 0:
        for _ in range(i):
            prev, cur = cur, (2 * cur[0] - prev[0], 2 * cur[1] - prev[1])
        out = prev
    else:
        # walk down: L(k-1) = 2 L(k) - L(k+1)
        lo, hi = prev, cur
        for _ in range(-i):
            lo, hi = (2 * lo[0] - hi[0], 2 * lo[1] - hi[1]), lo
        out = lo
    assert out == (1 - i, i), (i, out)
    return out


def reduce_p1xp1(i: int, j: int) -> tuple[Fraction, ...]:
    """Coordinates of ``[L0(i, j)]`` over the four-element basis of ``K(X_0)``."""
    a0, a1 = reduce_p1(i)
    b0, b1 = reduce_p1(j)
    # basis order (0,0), (1,0), (0,1), (1,1)
    return (a0 * b0, a1 * b0, a0 * b1, a1 * b1)


def _add(*terms):
    out = [Fraction(0), Fraction(0)]
    for c, v in terms:
        out[0] += c * v[0]
        out[1] += c * v[1]
    return tuple(out)


def curve_class(j: int) -> tuple[Fraction, Fraction]:
    """Class of ``O_C(j)`` for the flopping curve ``C``.

    The tautological section of ``L(-1)^2`` cuts out ``C``, so the Koszul
    complex ``0 -> L(2) -> L(1)^2 -> O -> O_C -> 0`` twisted by ``L(j)``
    gives ``[O_C(j)] = [L(j)] - 2[L(j+1)] + [L(j+2)]``.
    """
    return _add((1, reduce_p1(j)), (-2, reduce_p1(j + 1)), (1, reduce_p1(j + 2)))


def ideal_class(j: int) -> tuple[Fraction, Fraction]:
    """``[I_C (x) L(j)] = [L(j)] - [O_C(j)]``."""
    return _add((1, reduce_p1(j)), (-1, curve_class(j)))


GAMMA_MINUS = RationalMatrix.from_rows([[1, 0, 2, 1],
                                        [0, 1, -1, 0]])
GAMMA_PLUS = RationalMatrix.from_rows([[1, 2, 0, 1],
                                       [0, -1, 1, 0]])


def _pushforward_minus() -> RationalMatrix:
    """``Rp_-*`` on the ``L0`` basis, from the pushforward formulas.

    ``L0(i, 0) -> L(i)`` and ``L0(i, 1) -> I (x) L(i - 1)``.
    """
    cols = [reduce_p1(0), reduce_p1(1), ideal_class(-1), ideal_class(0)]
    return RationalMatrix.from_columns(cols, 2)


def _pushforward_plus() -> RationalMatrix:
    """``L0(0, i) -> L(i)`` and ``L0(1, i) -> I (x) L(i - 1)``."""
    cols = [reduce_p1(0), ideal_class(-1), reduce_p1(1), ideal_class(0)]
    return RationalMatrix.from_columns(cols, 2)


def atiyah_flober() -> HyperbolicDiagram:
    """The diagram ``K(X_-) <-> K(X_0) <-> K(X_+)`` on the line."""
    line = build(1, [[1]])
    # delta_-: L_-(i) -> L0(i, 0); delta_+: L_+(i) -> L0(0, i)
    delta_minus = RationalMatrix.from_columns([reduce_p1xp1(0, 0), reduce_p1xp1(1, 0)], 4)
    delta_plus = RationalMatrix.from_columns([reduce_p1xp1(0, 0), reduce_p1xp1(0, 1)], 4)
    assert _pushforward_minus() == GAMMA_MINUS and _pushforward_plus() == GAMMA_PLUS
    return build_diagram(
        line,
        {"-": 2, "0": 4, "+": 2},
        {("0", "-"): GAMMA_MINUS, ("0", "+"): GAMMA_PLUS},
        {("0", "-"): delta_minus, ("0", "+"): delta_plus},
        bases={"-": [f"L-({i})" for i in (0, 1)], "0": list(P1XP1_BASIS),
               "+": [f"L+({i})" for i in (0, 1)]},
    )
