"""Central hyperplane arrangements over Q and their face posets.

Faces are encoded by sign vectors: entry ``i`` is the sign of the ``i``-th
covector on the relative interior of the face. All cells are cones, so
strict inequalities ``f > 0`` can be replaced by ``f >= 1`` when testing
realizability.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, lcm
from typing import Iterable, Sequence

from .linalg import RationalMatrix, rank, rational_to_json, rref, to_rational
from .lp import find_point

SIGN_CHARS = {-1: "-", 0: "0", 1: "+"}
CHAR_SIGNS = {v: k for k, v in SIGN_CHARS.items()}


class ZeroCovector(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class FaceNotInArrangement(KeyError):
    pass


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def _dot(a: Sequence[Fraction], x: Sequence[Fraction]) -> Fraction:
    return sum((p * q for p, q in zip(a, x)), Fraction(0))


def sign_key(signs: Sequence[int]) -> str:
    return "".join(SIGN_CHARS[s] for s in signs)


def parse_sign_key(key: str) -> tuple[int, ...]:
    try:
        return tuple(CHAR_SIGNS[c] for c in key)
    except KeyError as exc:
        raise ValueError(f"bad sign key {key!r}; use characters from '-0+'") from exc


def canonical_covector(v: Sequence) -> tuple[Fraction, ...]:
    """Primitive integer multiple of ``v`` whose first nonzero entry is positive."""
    v = [to_rational(x) for x in v]
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise ZeroCovector("zero covector does not define a hyperplane")
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    if lead < 0:
        g = -g
    return tuple(Fraction(x // g) for x in ints)


@dataclass(frozen=True)
class Arrangement:
    dim: int
    covectors: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.covectors)

    def evaluate(self, x: Sequence) -> tuple[Fraction, ...]:
        if len(x) != self.dim:
            raise DimensionMismatch(f"point of length {len(x)} in dimension {self.dim}")
        x = [to_rational(t) for t in x]
        return tuple(_dot(f, x) for f in self.covectors)

    def signs_at(self, x: Sequence) -> tuple[int, ...]:
        return tuple(_sign(v) for v in self.evaluate(x))

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "hyperplanes": [[rational_to_json(q) for q in f] for f in self.covectors]}

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        try:
            return build(data["dim"], data["hyperplanes"])
        except (KeyError, TypeError) as exc:
            raise ValueError("arrangement needs 'dim' and 'hyperplanes'") from exc

    @property
    def poset(self) -> "FacePoset":
        return enumerate_faces(self)


def build(dim: int, covectors: Iterable[Sequence]) -> Arrangement:
    """Canonicalize covectors and merge hyperplanes given more than once."""
    if dim < 0:
        raise DimensionMismatch("negative dimension")
    seen: dict[tuple[Fraction, ...], None] = {}
    for f in covectors:
        if len(f) != dim:
            raise DimensionMismatch(f"covector {list(f)} does not have length {dim}")
        seen.setdefault(canonical_covector(f), None)
    return Arrangement(dim, tuple(seen))


@dataclass(frozen=True)
class Face:
    signs: tuple[int, ...]
    dim: int
    point: tuple[Fraction, ...] = field(compare=False, repr=False, default=())

    @property
    def key(self) -> str:
        return sign_key(self.signs)

    @property
    def zero_set(self) -> frozenset[int]:
        return frozenset(i for i, s in enumerate(self.signs) if s == 0)

    def __str__(self) -> str:
        return self.key


def _constraints(covectors, signs, offset=0, n=None):
    """Equalities / lower bounds saying a point lies in the cone with ``signs``.

    With ``offset`` the covector is placed into a block of a longer vector
    of length ``n``.
    """
    eqs, ges = [], []
    for f, s in zip(covectors, signs):
        if n is not None:
            row = [Fraction(0)] * n
            row[offset:offset + len(f)] = f
        else:
            row = list(f)
        if s == 0:
            eqs.append((row, 0))
        elif s > 0:
            ges.append((row, 1))
        else:
            ges.append(([-x for x in row], 1))
    return eqs, ges


def realize(arr: Arrangement, signs: Sequence[int]) -> tuple[Fraction, ...] | None:
    """A point with the given sign vector, or ``None`` if it is not realizable."""
    eqs, ges = _constraints(arr.covectors, signs)
    return find_point(arr.dim, eqs, ges)


def face_dimension(arr: Arrangement, signs: Sequence[int]) -> int:
    zero = [f for f, s in zip(arr.covectors, signs) if s == 0]
    if not zero:
        return arr.dim
    return arr.dim - rank(RationalMatrix.from_rows(zero, arr.dim))


@dataclass(frozen=True, eq=False)
class FacePoset:
    arrangement: Arrangement
    faces: tuple[Face, ...]

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {f.signs: i for i, f in enumerate(self.faces)}

    def __len__(self) -> int:
        return len(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __contains__(self, face) -> bool:
        return _signs_of(face) in self.index

    def get(self, face) -> Face:
        """Look a face up by :class:`Face`, sign tuple or sign key."""
        signs = _signs_of(face)
        try:
            return self.faces[self.index[signs]]
        except KeyError:
            raise FaceNotInArrangement(f"no face with signs {signs}") from None

    def leq(self, c, d) -> bool:
        """``c <= d``: ``c`` lies in the closure of ``d``."""
        a, b = self.get(c).signs, self.get(d).signs
        return all(s == 0 or s == t for s, t in zip(a, b))

    @cached_property
    def leq_matrix(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(all(s == 0 or s == t for s, t in zip(c.signs, d.signs))
                           for d in self.faces) for c in self.faces)

    @cached_property
    def minimum(self) -> Face:
        return self.get((0,) * self.arrangement.size)

    @property
    def chambers(self) -> list[Face]:
        return [f for f in self.faces if f.dim == self.arrangement.dim]

    def of_dim(self, d: int) -> list[Face]:
        return [f for f in self.faces if f.dim == d]

    def below(self, face) -> list[Face]:
        i = self.index[self.get(face).signs]
        return [c for c, row in zip(self.faces, self.leq_matrix) if row[i]]

    def above(self, face) -> list[Face]:
        i = self.index[self.get(face).signs]
        return [d for d, ok in zip(self.faces, self.leq_matrix[i]) if ok]

    def common_lower_bounds(self, c, d) -> list[Face]:
        i, j = self.index[self.get(c).signs], self.index[self.get(d).signs]
        return [e for e, row in zip(self.faces, self.leq_matrix) if row[i] and row[j]]

    @cached_property
    def covers(self) -> tuple[tuple[Face, Face], ...]:
        """Pairs ``(c, d)`` with ``c < d`` and nothing strictly in between.

        In a face poset these are exactly the pairs with ``dim d = dim c + 1``.
        """
        out = []
        for i, c in enumerate(self.faces):
            for j, d in enumerate(self.faces):
                if self.leq_matrix[i][j] and d.dim == c.dim + 1:
                    out.append((c, d))
        return tuple(out)

    def comparable_pairs(self) -> list[tuple[Face, Face]]:
        return [(c, d) for i, c in enumerate(self.faces)
                for j, d in enumerate(self.faces) if self.leq_matrix[i][j]]


def _signs_of(face) -> tuple[int, ...]:
    if isinstance(face, Face):
        return face.signs
    if isinstance(face, str):
        return parse_sign_key(face)
    return tuple(face)


def enumerate_faces(arr: Arrangement) -> FacePoset:
    """All realizable sign vectors of ``arr`` in lexicographic order.

    Sign vectors are grown one hyperplane at a time; a prefix that is not
    realizable for the first ``k`` hyperplanes has no realizable extension,
    so it is dropped. Every surviving candidate is checked by exact LP
    unless its parent's witness point already realizes it.
    """
    return _enumerate_cached(arr)


@lru_cache(maxsize=64)
def _enumerate_cached(arr: Arrangement) -> FacePoset:
    n = arr.dim
    level: list[tuple[tuple[int, ...], tuple[Fraction, ...]]] = [((), (Fraction(0),) * n)]
    for k, f in enumerate(arr.covectors):
        nxt = []
        for signs, witness in level:
            here = _sign(_dot(f, witness))
            for s in (-1, 0, 1):
                cand = signs + (s,)
                if s == here:
                    nxt.append((cand, witness))
                    continue
                eqs, ges = _constraints(arr.covectors[:k + 1], cand)
                pt = find_point(n, eqs, ges)
                if pt is not None:
                    nxt.append((cand, pt))
        level = nxt
    faces = sorted((Face(s, face_dimension(arr, s), w) for s, w in level), key=lambda c: c.signs)  # -1 < 0 < 1 matches '-' < '0' < '+'
    return FacePoset(arr, tuple(faces))


def face_of_point(arr: Arrangement, x: Sequence) -> Face:
    return arr.poset.get(arr.signs_at(x))


def wall_pair(poset: FacePoset, c, d) -> Face | None:
    """The wall separating two cells of equal dimension in a common flat.

    Returns a cell ``D <= c, d`` of dimension one less, or ``None`` when
    ``c`` and ``d`` are not separated by a wall.
    """
    c, d = poset.get(c), poset.get(d)
    if c == d or c.dim != d.dim or c.dim == 0 or c.zero_set != d.zero_set:
        return None
    for e in poset.common_lower_bounds(c, d):
        if e.dim == c.dim - 1:
            return e
    return None


def collinear(arr: Arrangement, c1, c2, c3) -> bool:
    """Whether some ``c1 in C1, c3 in C3`` have a point of ``C2`` on ``[c1, c3]``.

    If ``C2`` is an endpoint cell the answer is yes. Otherwise the point is
    interior, ``c2 = (1-t) c1 + t c3`` with ``0 < t < 1``, and rescaling
    ``q1 = (1-t) c1``, ``q3 = t c3`` turns the question into feasibility of
    ``q1 in C1, q3 in C3, q1 + q3 in C2``.
    """
    poset = arr.poset
    s1, s2, s3 = (poset.get(c).signs for c in (c1, c2, c3))
    if s2 == s1 or s2 == s3:
        return True
    return _collinear_interior(arr, s1, s2, s3)


@lru_cache(maxsize=1 << 16)
def _collinear_interior(arr, s1, s2, s3) -> bool:
    n = arr.dim
    eqs, ges = [], []
    for signs, blocks in ((s1, (0,)), (s3, (n,)), (s2, (0, n))):
        for f, s in zip(arr.covectors, signs):
            row = [Fraction(0)] * (2 * n)
            for off in blocks:
                row[off:off + n] = [a + b for a, b in zip(row[off:off + n], f)]
            if s == 0:
                eqs.append((row, 0))
            else:
                ges.append(([s * x for x in row], 1))
    return find_point(2 * n, eqs, ges) is not None


def restrict_to_flat(arr: Arrangement, face) -> tuple[Arrangement, Arrangement]:
    """Hyperplanes through ``face``, and the arrangement they induce on the quotient.

    The quotient ``V / span(face)`` has as dual the row space of the covectors
    vanishing on the face; coordinates are taken with respect to the nonzero
    rows of its reduced row-echelon basis.
    """
    face = arr.poset.get(face)
    through = [arr.covectors[i] for i in sorted(face.zero_set)]
    sub = Arrangement(arr.dim, tuple(through))
    if not through:
        return sub, Arrangement(0, ())
    rows, pivots = rref(RationalMatrix.from_rows(through, arr.dim))
    k = len(pivots)
    # f = sum_r c_r * rows[r], and rows[r] has a 1 at pivot r, 0 at other pivots
    quotient = build(k, [[f[p] for p in pivots] for f in through])
    return sub, quotient
