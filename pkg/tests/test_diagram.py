import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fixtures import A2, LINE, half_monodromy, invalid_fixtures, line_diagram, rj_star, valid_fixtures
from flobers.diagram import (ChainInconsistency, HyperbolicDiagram, MissingMap, NontrivialMonodromy,
                             NotPerverse, PhiPsiDatum, WrongArrangement, build_diagram,
                             cohomology_1d, constant_diagram, decompose_1d, monodromy_1d, phi,
                             skyscraper_diagram, to_phi_psi, validate)
from flobers.kflober import atiyah_flober
from flobers.linalg import RationalMatrix, ShapeMismatch, inverse, kernel_and_rank, rank

M = RationalMatrix.from_rows


def test_atiyah_phi_and_monodromy():
    D = atiyah_flober()
    assert phi(D, "-", "+") == M([[1, 2], [0, -1]])
    assert phi(D, "+", "-") == M([[1, 2], [0, -1]])
    assert phi(D, "-", "-").is_identity()
    assert monodromy_1d(D).is_identity()


@pytest.mark.parametrize("lam", [1, 2, -3, Fraction(1, 2)])
def test_half_monodromy_squares(lam):
    D = half_monodromy(lam)
    assert validate(D).passed
    assert monodromy_1d(D) == M([[lam * lam]])


def test_cohomology_small_cases():
    assert cohomology_1d(atiyah_flober()) == (1, 1, 2, 2)
    assert cohomology_1d(constant_diagram(LINE)) == (1, 0, 0, 1)
    assert cohomology_1d(skyscraper_diagram(LINE)) == (0, 1, 1, 0)
    assert cohomology_1d(build_diagram(LINE, {}, {}, {})) == (0, 0, 0, 0)
    assert cohomology_1d(rj_star()) == (1, 1, 0, 0)
    assert cohomology_1d(half_monodromy(1)) == (0, 0, 1, 1)


def test_phi_psi_of_basic_sheaves():
    P = to_phi_psi(skyscraper_diagram(LINE))
    assert (P.dim_phi, P.dim_psi) == (1, 0)
    P = to_phi_psi(constant_diagram(LINE))
    assert (P.dim_phi, P.dim_psi) == (0, 1)
    assert decompose_1d(to_phi_psi(rj_star())) == (0, 0, 1, 0)
    assert decompose_1d(to_phi_psi(half_monodromy(1))) == (0, 0, 0, 1)


def test_atiyah_phi_psi():
    P = to_phi_psi(atiyah_flober())
    assert (P.dim_phi, P.dim_psi) == (2, 2)
    assert P.v.is_zero() and rank(P.u) == 1
    assert P.is_perverse()
    assert decompose_1d(P) == (1, 1, 0, 1)


def test_decompose_by_hand():
    P = PhiPsiDatum(3, 2, RationalMatrix.zeros(3, 2), RationalMatrix.zeros(2, 3))
    assert decompose_1d(P) == (3, 2, 0, 0)
    P = PhiPsiDatum(1, 1, M([[1]]), M([[0]]))
    assert decompose_1d(P) == (0, 0, 0, 1)
    with pytest.raises(NontrivialMonodromy):
        decompose_1d(PhiPsiDatum(1, 1, M([[1]]), M([[1]])))
    with pytest.raises(ShapeMismatch):
        PhiPsiDatum(1, 2, M([[1]]), M([[1]]))


def test_to_phi_psi_rejects_invalid():
    with pytest.raises(NotPerverse):
        to_phi_psi(invalid_fixtures()["gamma+[0,0]"])


def test_one_dimensional_only():
    with pytest.raises(WrongArrangement):
        monodromy_1d(constant_diagram(A2))


def test_build_errors():
    with pytest.raises(MissingMap):
        build_diagram(LINE, {"-": 1, "0": 1, "+": 1}, {}, {})
    # an inconsistent chain on A2: two routes to the origin with different composites
    D = constant_diagram(A2)
    gam, dlt = D.covering_maps()
    key = next(k for k in gam if A2.poset.get(k[0]).dim == 0)
    gam[key] = M([[2]])
    with pytest.raises(ChainInconsistency):
        build_diagram(A2, D.dims, gam, dlt)


def test_json_round_trip():
    for D in (atiyah_flober(), constant_diagram(A2)):
        blob = json.dumps(D.to_json(), sort_keys=True)
        E = HyperbolicDiagram.from_json(json.loads(blob))
        assert E.dims == D.dims and E.gamma == D.gamma and E.delta == D.delta
        assert json.dumps(E.to_json(), sort_keys=True) == blob


def test_violations_are_collected_and_labelled():
    report = validate(invalid_fixtures()["gamma+[0,0]"])
    assert not report.passed
    conds = {v.condition for v in report.violations}
    assert "idempotency" in conds
    assert all(str(v).count("|") == 2 for v in report.violations)
    assert validate(invalid_fixtures()["gamma+[1,1]"]).by_condition("invertibility")


@pytest.mark.parametrize("name", sorted(valid_fixtures()))
def test_phi_agrees_through_every_lower_bound(name):
    D = valid_fixtures()[name]
    poset = D.poset
    for c in poset:
        for d in poset:
            if D.dims[c.signs] == D.dims[d.signs]:
                ref = phi(D, c, d)  # raises on disagreement
                assert ref.shape == (D.dims[d.signs], D.dims[c.signs])


# random valid diagrams on the line

@st.composite
def line_diagrams(draw):
    e0 = draw(st.integers(1, 4))
    ints = st.integers(-2, 2)

    def injective(k):
        while True:
            m = M([[draw(ints) for _ in range(k)] for _ in range(e0)])
            if rank(m) == k:
                return m

    def left_inverse(d):
        # (d^T d)^{-1} d^T plus anything killing the image of d
        if d.cols == 0:
            return RationalMatrix.zeros(0, e0)
        base = inverse(d.transpose() @ d) @ d.transpose()
        _, ker = kernel_and_rank(d.transpose())
        if ker.cols == 0:
            return base
        extra = M([[draw(ints) for _ in range(ker.cols)] for _ in range(d.cols)])
        return base + extra @ ker.transpose()

    em = draw(st.integers(0, e0))
    ep = draw(st.integers(0, e0))
    dm, dp = injective(em), injective(ep)
    return line_diagram(em, e0, ep, left_inverse(dm), left_inverse(dp), dm, dp)


@settings(max_examples=60, deadline=None)
@given(line_diagrams())
def test_random_line_diagrams(D):
    report = validate(D)
    if not report.passed:
        assert {v.condition for v in report.violations} == {"invertibility"}
        return
    h = cohomology_1d(D)
    assert h.h0 - h.h1 == h.h2c - h.h1c  # both compute the Euler characteristic
    P = to_phi_psi(D)
    assert P.dim_phi == D.dims[(0,)] - D.dims[(-1,)]
    assert P.t_psi == monodromy_1d(D)
    ru, rv = rank(P.u), rank(P.v)
    assert (h.h0, h.h1) == (P.dim_psi - ru, P.dim_phi - ru)
    assert (h.h1c, h.h2c) == (P.dim_phi - rv, P.dim_psi - rv)
