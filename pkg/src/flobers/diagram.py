"""Hyperbolic stalk diagrams of perverse sheaves on arrangement complements.

A diagram assigns a space ``E_C`` to every face ``C`` and, for ``C <= C'``,
a generalization map ``gamma[C, C']: E_C -> E_C'`` and a map back
``delta[C, C']: E_C' -> E_C``. Both dictionaries are keyed by the pair
``(C, C')`` of sign tuples with ``C <= C'``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, NamedTuple

from .arrangement import Arrangement, FacePoset, collinear, sign_key, wall_pair
from .linalg import (RationalMatrix, ShapeMismatch, hstack, kernel_and_rank, rank,
                     solve_in_basis, vstack)

Signs = tuple[int, ...]

CONDITIONS = ("transitivity", "idempotency", "phi-consistency",
              "collinear-transitivity", "invertibility")


class ChainInconsistency(ValueError):
    pass


class MissingMap(ValueError):
    pass


class Inconsistent(ValueError):
    pass


class WrongArrangement(ValueError):
    pass


class NotPerverse(ValueError):
    pass


class InternalCheck(AssertionError):
    pass


class NontrivialMonodromy(ValueError):
    pass


@dataclass
class HyperbolicDiagram:
    arrangement: Arrangement
    dims: dict[Signs, int]
    gamma: dict[tuple[Signs, Signs], RationalMatrix]
    delta: dict[tuple[Signs, Signs], RationalMatrix]
    bases: dict[Signs, list[str]] = field(default_factory=dict)

    @property
    def poset(self) -> FacePoset:
        return self.arrangement.poset

    def dim(self, face) -> int:
        return self.dims[self.poset.get(face).signs]

    def g(self, c, d) -> RationalMatrix:
        """``gamma_{cd}: E_c -> E_d`` for ``c <= d``."""
        return self.gamma[self.poset.get(c).signs, self.poset.get(d).signs]

    def d(self, c, d) -> RationalMatrix:
        """``delta_{dc}: E_d -> E_c`` for ``c <= d``."""
        return self.delta[self.poset.get(c).signs, self.poset.get(d).signs]

    def covering_maps(self):
        """The gamma and delta maps restricted to covering relations."""
        covers = [(c.signs, d.signs) for c, d in self.poset.covers]
        return ({k: self.gamma[k] for k in covers}, {k: self.delta[k] for k in covers})

    # serialization

    def to_json(self) -> dict:
        gam, dlt = self.covering_maps()
        out = {
            "arrangement": self.arrangement.to_json(),
            "dims": {sign_key(f.signs): self.dims[f.signs] for f in self.poset},
            "gamma": {f"{sign_key(c)}->{sign_key(d)}": m.to_json() for (c, d), m in gam.items()},
            "delta": {f"{sign_key(d)}->{sign_key(c)}": m.to_json() for (c, d), m in dlt.items()},
        }
        if self.bases:
            out["bases"] = {sign_key(k): list(v) for k, v in sorted(self.bases.items())}
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "HyperbolicDiagram":
        for name in ("arrangement", "dims", "gamma", "delta"):
            if name not in data:
                raise ValueError(f"diagram JSON is missing field '{name}'")
        arr = Arrangement.from_json(data["arrangement"])
        gamma = {}
        for key, m in data["gamma"].items():
            src, dst = _split_edge(key, "gamma")
            gamma[src, dst] = _matrix(m, f"gamma[{key}]")
        delta = {}
        for key, m in data["delta"].items():
            src, dst = _split_edge(key, "delta")
            delta[dst, src] = _matrix(m, f"delta[{key}]")
        dims = {}
        for key, v in data["dims"].items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"dims[{key}] must be a nonnegative integer")
            dims[key] = v
        bases = {k: list(v) for k, v in data.get("bases", {}).items()}
        return build_diagram(arr, dims, gamma, delta, bases=bases)


def _split_edge(key: str, name: str) -> tuple[str, str]:
    parts = key.split("->")
    if len(parts) != 2:
        raise ValueError(f"{name} key {key!r} must look like '<face>-><face>'")
    return parts[0], parts[1]


def _matrix(m, where: str) -> RationalMatrix:
    try:
        return RationalMatrix.from_json(m)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed matrix in {where}: {exc}") from exc


def build_diagram(arrangement: Arrangement, dims: Mapping, gamma_covers: Mapping,
                  delta_covers: Mapping, bases: Mapping | None = None) -> HyperbolicDiagram:
    """Extend maps given on covering relations to all comparable pairs.

    ``dims`` maps faces to dimensions; faces left out get dimension 0.
    ``gamma_covers[c, d]`` is ``E_c -> E_d`` and ``delta_covers[c, d]`` is
    ``E_d -> E_c``, for each cover ``c < d``. Maps between spaces one of
    which is zero may be omitted. Longer composites are formed along every
    saturated chain; if two chains disagree ``ChainInconsistency`` is raised.
    """
    poset = arrangement.poset
    key = lambda f: poset.get(f).signs
    dim_of = {f.signs: 0 for f in poset}
    for f, v in dims.items():
        dim_of[key(f)] = int(v)
    given_g = {(key(c), key(d)): m for (c, d), m in gamma_covers.items()}
    given_d = {(key(c), key(d)): m for (c, d), m in delta_covers.items()}
    cover_set = {(c.signs, d.signs) for c, d in poset.covers}
    for k in list(given_g) + list(given_d):
        if k not in cover_set:
            raise ValueError(f"map given on {sign_key(k[0])}->{sign_key(k[1])}, "
                             "which is not a covering relation")

    gamma: dict = {}
    delta: dict = {}
    for f in poset:
        gamma[f.signs, f.signs] = RationalMatrix.identity(dim_of[f.signs])
        delta[f.signs, f.signs] = RationalMatrix.identity(dim_of[f.signs])
    for c, d in poset.covers:
        k = (c.signs, d.signs)
        a, b = dim_of[c.signs], dim_of[d.signs]
        for store, given, shape, name in ((gamma, given_g, (b, a), "gamma"),
                                         (delta, given_d, (a, b), "delta")):
            m = given.get(k)
            if m is None:
                if a and b:
                    raise MissingMap(f"{name} missing on cover {sign_key(k[0])} < {sign_key(k[1])}")
                m = RationalMatrix.zeros(*shape)
            if m.shape != shape:
                raise ShapeMismatch(f"{name} on {sign_key(k[0])} < {sign_key(k[1])} has shape "
                                    f"{m.shape}, expected {shape}")
            store[k] = m

    pairs = sorted(((c, d) for c, d in poset.comparable_pairs() if d.dim - c.dim >= 2),
                   key=lambda p: p[1].dim - p[0].dim)
    for c, d in pairs:
        g_cands, d_cands = set(), set()
        for e in poset.above(c):
            if e.dim == c.dim + 1 and poset.leq(e, d):
                g_cands.add(gamma[e.signs, d.signs] @ gamma[c.signs, e.signs])
                d_cands.add(delta[c.signs, e.signs] @ delta[e.signs, d.signs])
        if len(g_cands) != 1 or len(d_cands) != 1:
            which = "gamma" if len(g_cands) != 1 else "delta"
            raise ChainInconsistency(
                f"{which} composites from {sign_key(c.signs)} to {sign_key(d.signs)} "
                "depend on the chain")
        gamma[c.signs, d.signs] = g_cands.pop()
        delta[c.signs, d.signs] = d_cands.pop()
    return HyperbolicDiagram(arrangement, dim_of, gamma, delta,
                             {key(k): list(v) for k, v in (bases or {}).items()})


class Violation(NamedTuple):
    condition: str
    faces: tuple[str, ...]
    detail: str

    def __str__(self) -> str:
        return f"{self.condition} | {' '.join(self.faces)} | {self.detail}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def by_condition(self, condition: str) -> list[Violation]:
        return [v for v in self.violations if v.condition == condition]


def _phi_min(D: HyperbolicDiagram, c: Signs, d: Signs) -> RationalMatrix:
    z = D.poset.minimum.signs
    return D.gamma[z, d] @ D.delta[z, c]


def validate(D: HyperbolicDiagram) -> ValidationReport:
    """Check every axiom and collect all violations.

    Conditions are checked in a fixed order: transitivity, idempotency,
    consistency of the flopping maps over lower bounds, collinear
    transitivity, invertibility across walls.
    """
    poset = D.poset
    faces = poset.faces
    out: list[Violation] = []

    def bad(cond, fs, detail):
        out.append(Violation(cond, tuple(sign_key(f) for f in fs), detail))

    for c in faces:
        for e in poset.above(c):
            if e == c:
                continue
            for d in poset.above(e):
                if d == e:
                    continue
                k = c.signs, e.signs, d.signs
                if D.gamma[k[0], k[2]] != D.gamma[k[1], k[2]] @ D.gamma[k[0], k[1]]:
                    bad("transitivity", k, "gamma does not compose")
                if D.delta[k[0], k[2]] != D.delta[k[0], k[1]] @ D.delta[k[1], k[2]]:
                    bad("transitivity", k, "delta does not compose")

    for c, d in poset.comparable_pairs():
        k = c.signs, d.signs
        if not (D.gamma[k] @ D.delta[k]).is_identity():
            bad("idempotency", k, "gamma . delta is not the identity")

    phi = {}
    for c in faces:
        for d in faces:
            ref = phi[c.signs, d.signs] = _phi_min(D, c.signs, d.signs)
            for e in poset.common_lower_bounds(c, d):
                if e == poset.minimum:
                    continue
                if D.gamma[e.signs, d.signs] @ D.delta[e.signs, c.signs] != ref:
                    bad("phi-consistency", (c.signs, d.signs, e.signs),
                        "flopping map depends on the lower bound")

    # Collinearity is an LP, so it is only decided for triples that would fail.
    arr = D.arrangement
    for c1 in faces:
        for c2 in faces:
            p12 = phi[c1.signs, c2.signs]
            for c3 in faces:
                if phi[c1.signs, c3.signs] == phi[c2.signs, c3.signs] @ p12:
                    continue
                if collinear(arr, c1, c2, c3):
                    bad("collinear-transitivity", (c1.signs, c2.signs, c3.signs),
                        "phi_13 != phi_23 phi_12")

    for i, c in enumerate(faces):
        for d in faces[i + 1:]:
            wall = wall_pair(poset, c, d)
            if wall is None:
                continue
            m = phi[c.signs, d.signs]
            if m.rows != m.cols or rank(m) != m.rows:
                bad("invertibility", (c.signs, d.signs, wall.signs),
                    f"phi across wall {wall.key} is not invertible")
            m = phi[d.signs, c.signs]
            if m.rows != m.cols or rank(m) != m.rows:
                bad("invertibility", (d.signs, c.signs, wall.signs),
                    f"phi across wall {wall.key} is not invertible")

    order = {name: i for i, name in enumerate(CONDITIONS)}
    out.sort(key=lambda v: (order[v.condition], v.faces, v.detail))
    return ValidationReport(tuple(out))


def phi(D: HyperbolicDiagram, c, d) -> RationalMatrix:
    """Flopping map ``E_c -> E_d``, routed through the minimal face."""
    poset = D.poset
    c, d = poset.get(c), poset.get(d)
    ref = _phi_min(D, c.signs, d.signs)
    for e in poset.common_lower_bounds(c, d):
        if D.gamma[e.signs, d.signs] @ D.delta[e.signs, c.signs] != ref:
            raise Inconsistent(f"phi_{c.key},{d.key} differs through {e.key}")
    return ref


# one-dimensional case: the single hyperplane {0} in R

MINUS, ZERO, PLUS = (-1,), (0,), (1,)


def _require_line(D: HyperbolicDiagram) -> None:
    arr = D.arrangement
    if arr.dim != 1 or arr.size != 1:
        raise WrongArrangement("needs the arrangement {0} in R^1")


def monodromy_1d(D: HyperbolicDiagram) -> RationalMatrix:
    """``T = (gamma_+ delta_-)(gamma_- delta_+)`` acting on ``E_+``."""
    _require_line(D)
    return (D.gamma[ZERO, PLUS] @ D.delta[ZERO, MINUS]) @ (D.gamma[ZERO, MINUS] @ D.delta[ZERO, PLUS])


class Cohomology(NamedTuple):
    h0: int
    h1: int
    h1c: int
    h2c: int


def cohomology_1d(D: HyperbolicDiagram) -> Cohomology:
    _require_line(D)
    em, e0, ep = D.dims[MINUS], D.dims[ZERO], D.dims[PLUS]
    deltas = hstack([D.delta[ZERO, MINUS], D.delta[ZERO, PLUS]], e0)
    gammas = vstack([D.gamma[ZERO, MINUS], D.gamma[ZERO, PLUS]], e0)
    r, rc = rank(deltas), rank(gammas)
    return Cohomology(em + ep - r, e0 - r, e0 - rc, em + ep - rc)


@dataclass(frozen=True)
class PhiPsiDatum:
    """Vanishing cycles ``Phi``, nearby cycles ``Psi`` and ``u: Psi -> Phi``,
    ``v: Phi -> Psi``. ``phi_embedding`` has the chosen basis of ``Phi`` as
    columns inside ``E_0`` (empty when built by hand)."""

    dim_phi: int
    dim_psi: int
    u: RationalMatrix
    v: RationalMatrix
    phi_embedding: RationalMatrix | None = None

    def __post_init__(self):
        if self.u.shape != (self.dim_phi, self.dim_psi):
            raise ShapeMismatch(f"u must be {self.dim_phi}x{self.dim_psi}, got {self.u.shape}")
        if self.v.shape != (self.dim_psi, self.dim_phi):
            raise ShapeMismatch(f"v must be {self.dim_psi}x{self.dim_phi}, got {self.v.shape}")

    @property
    def t_phi(self) -> RationalMatrix:
        return RationalMatrix.identity(self.dim_phi) - self.u @ self.v

    @property
    def t_psi(self) -> RationalMatrix:
        return RationalMatrix.identity(self.dim_psi) - self.v @ self.u

    def is_perverse(self) -> bool:
        return rank(self.t_phi) == self.dim_phi and rank(self.t_psi) == self.dim_psi


def to_phi_psi(D: HyperbolicDiagram) -> PhiPsiDatum:
    """Pass to vanishing/nearby cycles: ``Phi = Ker(gamma_-)``, ``Psi = E_+``.

    ``v`` is ``gamma_+`` restricted to ``Phi``; ``u`` is
    ``delta_+ - delta_- gamma_- delta_+``, which lands in ``Ker(gamma_-)``.
    """
    _require_line(D)
    report = validate(D)
    if not report.passed:
        raise NotPerverse(f"diagram fails {len(report.violations)} condition(s): "
                          f"{report.violations[0]}")
    g_minus, g_plus = D.gamma[ZERO, MINUS], D.gamma[ZERO, PLUS]
    d_minus, d_plus = D.delta[ZERO, MINUS], D.delta[ZERO, PLUS]
    _, basis = kernel_and_rank(g_minus)
    u_in_e0 = d_plus - d_minus @ (g_minus @ d_plus)
    if not (g_minus @ u_in_e0).is_zero():
        raise InternalCheck("u does not land in Ker(gamma_-)")
    u = solve_in_basis(basis, u_in_e0)
    v = g_plus @ basis
    datum = PhiPsiDatum(basis.cols, D.dims[PLUS], u, v, basis)
    if datum.t_psi != monodromy_1d(D):
        raise InternalCheck("Id - vu differs from the monodromy")
    return datum


class Multiplicities(NamedTuple):
    skyscraper: int
    constant: int
    rj_star: int
    j_shriek: int


def decompose_1d(P: PhiPsiDatum) -> Multiplicities:
    """Multiplicities of the four indecomposables with trivial monodromy.

    Requires ``uv = 0`` and ``vu = 0``; then ``u`` contributes one copy of
    ``j_!`` per unit of rank, ``v`` one copy of ``Rj_*``, and the rest of
    ``Phi`` resp. ``Psi`` splits off as skyscrapers resp. constant sheaves.
    """
    if not (P.u @ P.v).is_zero() or not (P.v @ P.u).is_zero():
        raise NontrivialMonodromy("uv and vu must both vanish")
    ru, rv = rank(P.u), rank(P.v)
    return Multiplicities(P.dim_phi - ru - rv, P.dim_psi - ru - rv, rv, ru)


# constructions used to produce further valid diagrams

def pullback_along_hyperplane(D: HyperbolicDiagram, arrangement: Arrangement,
                              index: int) -> HyperbolicDiagram:
    """Pull a diagram on the line back along the ``index``-th covector.

    The linear map ``f: R^n -> R`` sends faces to faces and segments to
    segments, so the axioms survive.
    """
    _require_line(D)
    poset = arrangement.poset
    img = {f.signs: (f.signs[index],) for f in poset}
    dims = {s: D.dims[t] for s, t in img.items()}
    gamma, delta = {}, {}
    for c, d in poset.comparable_pairs():
        k = c.signs, d.signs
        gamma[k] = D.gamma[img[k[0]], img[k[1]]]
        delta[k] = D.delta[img[k[0]], img[k[1]]]
    return HyperbolicDiagram(arrangement, dims, gamma, delta)


def direct_sum(A: HyperbolicDiagram, B: HyperbolicDiagram) -> HyperbolicDiagram:
    if A.arrangement != B.arrangement:
        raise WrongArrangement("summands live on different arrangements")

    def block(x: RationalMatrix, y: RationalMatrix) -> RationalMatrix:
        top = hstack([x, RationalMatrix.zeros(x.rows, y.cols)], x.rows)
        bottom = hstack([RationalMatrix.zeros(y.rows, x.cols), y], y.rows)
        return vstack([top, bottom], x.cols + y.cols)

    dims = {k: A.dims[k] + B.dims[k] for k in A.dims}
    gamma = {k: block(A.gamma[k], B.gamma[k]) for k in A.gamma}
    delta = {k: block(A.delta[k], B.delta[k]) for k in A.delta}
    return HyperbolicDiagram(A.arrangement, dims, gamma, delta)


def constant_diagram(arrangement: Arrangement, rank_: int = 1) -> HyperbolicDiagram:
    poset = arrangement.poset
    one = RationalMatrix.identity(rank_)
    pairs = [(c.signs, d.signs) for c, d in poset.comparable_pairs()]
    return HyperbolicDiagram(arrangement, {f.signs: rank_ for f in poset},
                             {k: one for k in pairs}, {k: one for k in pairs})


def skyscraper_diagram(arrangement: Arrangement) -> HyperbolicDiagram:
    """``E = Q`` at the origin and zero elsewhere."""
    z = arrangement.poset.minimum.signs
    return build_diagram(arrangement, {z: 1}, {}, {})
