"""Exact rational matrices.

Scalars are :class:`fractions.Fraction`, which is always kept in lowest
terms with a positive denominator. A matrix of shape ``b x a`` represents a
linear map ``Q^a -> Q^b`` acting on column vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ShapeMismatch(ValueError):
    pass


class Singular(ArithmeticError):
    pass


def to_rational(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused; they would silently break exactness.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rational_to_json(q: Fraction) -> int | str:
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch("negative dimension")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # construction

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ShapeMismatch("ragged rows")
        return cls(len(rows), cols, tuple(to_rational(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "RationalMatrix":
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ShapeMismatch("column of wrong length")
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    # access

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == RationalMatrix.identity(self.rows)

    # arithmetic

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols, self.rows,
            tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)),
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        return compose(self, other)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return RationalMatrix(self.rows, self.cols,
                              tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def scale(self, c) -> "RationalMatrix":
        c = to_rational(c)
        return RationalMatrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def apply(self, v: Sequence) -> tuple[Fraction, ...]:
        if len(v) != self.cols:
            raise ShapeMismatch(f"vector of length {len(v)} for {self.cols} columns")
        v = [to_rational(x) for x in v]
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), Fraction(0))
                     for i in range(self.rows))

    def with_entry(self, i: int, j: int, value) -> "RationalMatrix":
        entries = list(self.entries)
        entries[i * self.cols + j] = to_rational(value)
        return RationalMatrix(self.rows, self.cols, tuple(entries))

    # serialization

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [rational_to_json(q) for q in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "RationalMatrix":
        try:
            rows, cols, entries = data["rows"], data["cols"], data["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"matrix needs rows/cols/entries: {data!r}") from exc
        return cls(int(rows), int(cols), tuple(to_rational(x) for x in entries))

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"<{self.rows}x{self.cols}>"
        cells = [[str(x) for x in r] for r in self.to_rows()]
        width = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(width) for c in r) + "]" for r in cells)


def compose(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Return the product ``a @ b`` (apply ``b`` first)."""
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot compose {a.shape} with {b.shape}")
    bcols = b.columns()
    out = []
    for i in range(a.rows):
        r = a.row(i)
        for c in bcols:
            s = Fraction(0)
            for x, y in zip(r, c):
                if x and y:
                    s += x * y
            out.append(s)
    return RationalMatrix(a.rows, b.cols, tuple(out))


def hstack(blocks: Iterable[RationalMatrix], rows: int) -> RationalMatrix:
    cols: list[tuple[Fraction, ...]] = []
    for m in blocks:
        if m.rows != rows:
            raise ShapeMismatch("hstack blocks need equal row counts")
        cols.extend(m.columns())
    return RationalMatrix.from_columns(cols, rows)


def vstack(blocks: Iterable[RationalMatrix], cols: int) -> RationalMatrix:
    rows: list[list[Fraction]] = []
    for m in blocks:
        if m.cols != cols:
            raise ShapeMismatch("vstack blocks need equal column counts")
        rows.extend(m.to_rows())
    return RationalMatrix.from_rows(rows, cols)


def rref(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form and the pivot columns.

    Pivots are taken as the first nonzero entry in each column; no
    magnitude-based selection is needed over Q.
    """
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def rank(m: RationalMatrix) -> int:
    return len(rref(m)[1])


def kernel_and_rank(m: RationalMatrix) -> tuple[int, RationalMatrix]:
    """Rank of ``m`` and a basis of its null space, stored as columns.

    Basis vectors correspond to free columns in ascending order; the vector
    for free column ``f`` has a 1 in position ``f`` and zeros at the other
    free positions.
    """
    a, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -a[r][f]
        basis.append(v)
    return len(pivots), RationalMatrix.from_columns(basis, m.cols)


def inverse(m: RationalMatrix) -> RationalMatrix:
    if m.rows != m.cols:
        raise ShapeMismatch(f"inverse of a non-square {m.shape} matrix")
    n = m.rows
    aug = hstack([m, RationalMatrix.identity(n)], n)
    a, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise Singular(f"matrix of size {n} has rank {sum(p < n for p in pivots)}")
    return RationalMatrix.from_rows([row[n:] for row in a], n)


def solve_in_basis(basis: RationalMatrix, target: RationalMatrix) -> RationalMatrix:
    """Coordinates ``X`` with ``basis @ X == target``.

    ``basis`` must have independent columns and every column of ``target``
    must lie in their span.
    """
    if basis.rows != target.rows:
        raise ShapeMismatch("basis and target live in different spaces")
    k = basis.cols
    a, pivots = rref(hstack([basis, target], basis.rows))
    if pivots[:k] != list(range(k)) or any(p >= k for p in pivots):
        raise ValueError("target is not in the span of an independent basis")
    return RationalMatrix.from_rows([a[i][k:] for i in range(k)], target.cols)
