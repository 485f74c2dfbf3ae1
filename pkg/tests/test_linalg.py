from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from flobers.linalg import (RationalMatrix, ShapeMismatch, Singular, compose, inverse,
                            kernel_and_rank, rational_to_json, solve_in_basis, to_rational)

GAMMA_MINUS = RationalMatrix.from_rows([[1, 0, 2, 1], [0, 1, -1, 0]])
GAMMA_PLUS = RationalMatrix.from_rows([[1, 2, 0, 1], [0, -1, 1, 0]])
DELTA_MINUS = RationalMatrix.from_columns([[1, 0, 0, 0], [0, 1, 0, 0]], 4)
DELTA_PLUS = RationalMatrix.from_columns([[1, 0, 0, 0], [0, 0, 1, 0]], 4)


def small_matrices(max_rows=4, max_cols=4):
    entry = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda rc: st.lists(entry, min_size=rc[0] * rc[1], max_size=rc[0] * rc[1]).map(
            lambda es: RationalMatrix(rc[0], rc[1], tuple(es))))


def test_rationals_are_normalized():
    q = to_rational("-6/4")
    assert (q.numerator, q.denominator) == (-3, 2)
    assert to_rational("0/5") == Fraction(0, 1)
    assert rational_to_json(Fraction(4, 2)) == 2
    assert rational_to_json(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_identity_kernel():
    r, k = kernel_and_rank(RationalMatrix.identity(2))
    assert r == 2 and k.shape == (2, 0)


def test_zero_matrix_kernel():
    r, k = kernel_and_rank(RationalMatrix.zeros(3, 4))
    assert r == 0 and k == RationalMatrix.identity(4)


def test_gamma_minus_kernel():
    r, k = kernel_and_rank(GAMMA_MINUS)
    assert r == 2
    # hand solution of x1 + 2x3 + x4 = 0, x2 - x3 = 0 with x3, x4 free
    assert k.columns() == [(-2, 1, 1, 0), (-1, 0, 0, 1)]
    assert (GAMMA_MINUS @ k).is_zero()


def test_inverse_examples():
    assert inverse(RationalMatrix.identity(3)) == RationalMatrix.identity(3)
    m = RationalMatrix.from_rows([[1, 2], [0, -1]])
    assert inverse(m) == m
    with pytest.raises(Singular):
        inverse(RationalMatrix.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(ShapeMismatch):
        inverse(RationalMatrix.zeros(2, 3))


def test_compose_examples():
    a = RationalMatrix.from_rows([[1, "1/2"], [3, 4], [0, -1]])
    assert compose(a, RationalMatrix.identity(2)) == a
    assert GAMMA_MINUS @ DELTA_MINUS == RationalMatrix.identity(2)
    assert (GAMMA_PLUS @ DELTA_MINUS) @ (GAMMA_MINUS @ DELTA_PLUS) == RationalMatrix.identity(2)
    with pytest.raises(ShapeMismatch):
        compose(a, a)


def test_empty_shapes():
    z = RationalMatrix.zeros(0, 3)
    assert compose(RationalMatrix.zeros(2, 0), z) == RationalMatrix.zeros(2, 3)
    r, k = kernel_and_rank(z)
    assert r == 0 and k == RationalMatrix.identity(3)


def test_json_round_trip():
    m = RationalMatrix.from_rows([[1, "-2/3"], [0, 5]])
    data = m.to_json()
    assert data == {"rows": 2, "cols": 2, "entries": [1, "-2/3", 0, 5]}
    assert RationalMatrix.from_json(data) == m


def test_solve_in_basis():
    _, k = kernel_and_rank(GAMMA_MINUS)
    target = RationalMatrix.from_columns([[-4, 2, 2, 0], [-1, 0, 0, 1]], 4)
    assert solve_in_basis(k, target) == RationalMatrix.from_rows([[2, 0], [0, 1]])


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_rank_nullity_against_sympy(m):
    r, k = kernel_and_rank(m)
    assert r == sympy.Matrix(m.to_rows()).rank()
    assert r + k.cols == m.cols
    assert (m @ k).is_zero()
    assert kernel_and_rank(k)[0] == k.cols


@settings(max_examples=100, deadline=None)
@given(small_matrices(3, 3).filter(lambda m: m.rows == m.cols))
def test_inverse_iff_trivial_kernel(m):
    r, k = kernel_and_rank(m)
    if k.cols:
        with pytest.raises(Singular):
            inverse(m)
    else:
        inv = inverse(m)
        assert inv @ m == RationalMatrix.identity(m.rows) == m @ inv


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.data())
def test_compose_is_associative(a, b, c, d, data):
    entry = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    mk = lambda r, s: RationalMatrix(r, s, tuple(data.draw(st.lists(entry, min_size=r * s, max_size=r * s))))
    x, y, z = mk(a, b), mk(b, c), mk(c, d)
    assert (x @ y) @ z == x @ (y @ z)
