"""Type A root data and the dictionaries attached to the coroot arrangement.

Weights are written in the basis of fundamental weights, so that the
pairing with a coroot is a coordinate sum: the positive root
``e_i - e_j`` (``i < j``) pairs with ``sum(c[i-1:j-1])``. Roots are
stored as ordered pairs ``(i, j)``, ``i != j``, meaning ``e_i - e_j``.
Weyl group elements are permutations of ``1..n`` in one-line notation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from math import factorial
from typing import Sequence

from .arrangement import Arrangement, Face, build, face_of_point, restrict_to_flat

Root = tuple[int, int]
Perm = tuple[int, ...]


class RankOutOfRange(ValueError):
    pass


class NotAChamber(ValueError):
    pass


class NotAPositiveRoot(ValueError):
    pass


@dataclass(frozen=True)
class RootDatum:
    rank: int

    @property
    def n(self) -> int:
        return self.rank + 1

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple((i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        return self.positive_roots + tuple((j, i) for i, j in self.positive_roots)

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple((i, i + 1) for i in range(1, self.n))

    def simple_root_weights(self) -> list[list[int]]:
        """Simple roots in fundamental-weight coordinates (rows of the Cartan matrix)."""
        r = self.rank
        return [[2 if a == b else -1 if abs(a - b) == 1 else 0 for b in range(r)]
                for a in range(r)]

    def coroot_covector(self, alpha: Root) -> tuple[int, ...]:
        i, j = alpha
        lo, hi, s = (i, j, 1) if i < j else (j, i, -1)
        return tuple(s if lo - 1 <= k < hi - 1 else 0 for k in range(self.rank))

    @cached_property
    def weyl_group(self) -> tuple[Perm, ...]:
        return tuple(permutations(range(1, self.n + 1)))

    @property
    def identity(self) -> Perm:
        return tuple(range(1, self.n + 1))

    @property
    def longest(self) -> Perm:
        return tuple(range(self.n, 0, -1))

    def simple_reflection(self, i: int) -> Perm:
        w = list(self.identity)
        w[i - 1], w[i] = w[i], w[i - 1]
        return tuple(w)

    @property
    def rho(self) -> tuple[Fraction, ...]:
        return (Fraction(1),) * self.rank

    def act_on_root(self, w: Perm, alpha: Root) -> Root:
        return (w[alpha[0] - 1], w[alpha[1] - 1])

    def act_on_weight(self, w: Perm, c: Sequence) -> tuple[Fraction, ...]:
        """``w . lambda`` for ``lambda`` in fundamental-weight coordinates."""
        c = [Fraction(x) for x in c]
        lam = [sum(c[k:], Fraction(0)) for k in range(self.n)]  # e-coordinates, last one 0
        out = [Fraction(0)] * self.n
        for k in range(self.n):
            out[w[k] - 1] = lam[k]
        return tuple(out[k] - out[k + 1] for k in range(self.rank))

    def evaluate(self, alpha: Root, c: Sequence) -> Fraction:
        return sum((Fraction(a) * Fraction(x) for a, x in zip(self.coroot_covector(alpha), c)),
                   Fraction(0))

    @cached_property
    def arrangement(self) -> Arrangement:
        return coroot_arrangement(self)


def build_root_datum(rank: int) -> RootDatum:
    if not 1 <= rank <= 6:
        raise RankOutOfRange(f"type A rank must be between 1 and 6, got {rank}")
    return RootDatum(rank)


def compose(w: Perm, v: Perm) -> Perm:
    """``w v``: apply ``v`` first."""
    return tuple(w[v[k] - 1] for k in range(len(v)))


def invert(w: Perm) -> Perm:
    out = [0] * len(w)
    for k, x in enumerate(w, start=1):
        out[x - 1] = k
    return tuple(out)


def coroot_arrangement(R: RootDatum) -> Arrangement:
    """One hyperplane per positive root, in the order of ``R.positive_roots``."""
    return build(R.rank, [R.coroot_covector(a) for a in R.positive_roots])


def chamber_of(R: RootDatum, w: Perm) -> Face:
    """``C_w = w^{-1}(C_+)``, located through the point ``w^{-1} rho``."""
    if sorted(w) != list(R.identity):
        raise ValueError(f"{w} is not a permutation of 1..{R.n}")
    return face_of_point(R.arrangement, R.act_on_weight(invert(w), R.rho))


def weyl_of(R: RootDatum, chamber) -> Perm:
    face = R.arrangement.poset.get(chamber)
    if face.dim != R.rank:
        raise NotAChamber(f"{face.key} has dimension {face.dim}")
    return _chamber_table(R)[face.signs]


def _chamber_table(R: RootDatum) -> dict[tuple[int, ...], Perm]:
    return {chamber_of(R, w).signs: w for w in R.weyl_group}


def parabolic_and_levi(R: RootDatum, face) -> tuple[frozenset[Root], frozenset[Root]]:
    """Roots that are ``>= 0`` on the face, and those that vanish on it.

    A root has constant sign on a cell, so one interior point decides.
    """
    face = R.arrangement.poset.get(face)
    values = {a: R.evaluate(a, face.point) for a in R.roots}
    return (frozenset(a for a, v in values.items() if v >= 0),
            frozenset(a for a, v in values.items() if v == 0))


def restriction_arrangements(R: RootDatum, face) -> tuple[Arrangement, Arrangement]:
    return restrict_to_flat(R.arrangement, face)


def desingularization_sign(R: RootDatum, w: Perm, alpha: Root) -> str:
    if alpha not in R.positive_roots:
        raise NotAPositiveRoot(f"{alpha} is not a positive root of A{R.rank}")
    i, j = R.act_on_root(w, alpha)
    return "positive" if i < j else "negative"


def weyl_order(R: RootDatum) -> int:
    return factorial(R.n)


def levi_weyl_order(R: RootDatum, face) -> int:
    """Order of the Weyl group of the Levi factor of ``face``.

    The Levi roots form a type A system on the blocks of equal
    ``e``-coordinates of an interior point; the Weyl group is a product of
    symmetric groups on those blocks.
    """
    _, levi = parabolic_and_levi(R, face)
    parent = list(range(R.n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in levi:
        parent[find(i)] = find(j)
    sizes: dict[int, int] = {}
    for k in range(1, R.n + 1):
        sizes[find(k)] = sizes.get(find(k), 0) + 1
    out = 1
    for s in sizes.values():
        out *= factorial(s)
    return out
