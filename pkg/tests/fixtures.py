"""Diagrams tagged valid / invalid for the validator sweep."""
from __future__ import annotations

from flobers.arrangement import build
from flobers.diagram import (build_diagram, constant_diagram, direct_sum,
                             pullback_along_hyperplane, skyscraper_diagram)
from flobers.kflober import atiyah_flober
from flobers.linalg import RationalMatrix
from flobers.roots import build_root_datum

LINE = build(1, [[1]])
A2 = build_root_datum(2).arrangement

M = RationalMatrix.from_rows


def line_diagram(em, e0, ep, g_minus, g_plus, d_minus, d_plus):
    return build_diagram(LINE, {"-": em, "0": e0, "+": ep},
                         {("0", "-"): g_minus, ("0", "+"): g_plus},
                         {("0", "-"): d_minus, ("0", "+"): d_plus})


def half_monodromy(lam):
    """Rank-one local system with both half-monodromies ``lam``, extended by zero."""
    return line_diagram(1, 2, 1, M([[1, lam]]), M([[lam, 1]]), M([[1], [0]]), M([[0], [1]]))


def rj_star():
    return line_diagram(1, 2, 1, M([[1, 0]]), M([[1, 1]]), M([[1], [0]]), M([[1], [0]]))


def perturbed_atiyah(which, i, j, by=1):
    D = atiyah_flober()
    store = D.gamma if which.startswith("gamma") else D.delta
    key = ((0,), (-1,)) if which.endswith("minus") else ((0,), (1,))
    store[key] = store[key].with_entry(i, j, store[key][i, j] + by)
    gam, dlt = D.covering_maps()
    return build_diagram(LINE, D.dims, gam, dlt)


def valid_fixtures():
    at = atiyah_flober()
    out = {
        "atiyah": at,
        "zero-line": build_diagram(LINE, {}, {}, {}),
        "constant-line": constant_diagram(LINE),
        "skyscraper-line": skyscraper_diagram(LINE),
        "half-monodromy-2": half_monodromy(2),
        "rj-star": rj_star(),
        "constant-a2": constant_diagram(A2),
        "skyscraper-a2": skyscraper_diagram(A2),
        "constant+skyscraper-a2": direct_sum(constant_diagram(A2, 2), skyscraper_diagram(A2)),
        # entries of gamma_+ on L0(1,1) never enter the axioms
        "atiyah-invisible-entry": perturbed_atiyah("gamma_plus", 0, 3),
        # changes the half-monodromy to [[1,3],[0,-1]], still invertible
        "atiyah-other-monodromy": perturbed_atiyah("gamma_plus", 0, 1),
    }
    for k in range(3):
        out[f"atiyah-pullback-{k}"] = pullback_along_hyperplane(at, A2, k)
    out["atiyah-pullback-sum"] = direct_sum(pullback_along_hyperplane(at, A2, 0),
                                            pullback_along_hyperplane(half_monodromy(3), A2, 2))
    return out


def invalid_fixtures():
    return {
        "gamma+[0,0]": perturbed_atiyah("gamma_plus", 0, 0),
        "gamma+[1,1]": perturbed_atiyah("gamma_plus", 1, 1),
        "gamma-[1,2]": perturbed_atiyah("gamma_minus", 1, 2),
        "gamma-[0,0]": perturbed_atiyah("gamma_minus", 0, 0),
        "delta-[0,0]": perturbed_atiyah("delta_minus", 0, 0),
        "delta+[3,1]": perturbed_atiyah("delta_plus", 3, 1),
        "pullback-of-gamma+[0,0]": pullback_along_hyperplane(
            perturbed_atiyah("gamma_plus", 0, 0), A2, 1),
        "half-monodromy-0": half_monodromy(0),
    }
