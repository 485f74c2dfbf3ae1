"""Cell-by-cell bookkeeping for the sl_3 web of flops.

Every row is computed from the A_2 root data where that is possible.
Numbers that come from the geometry of the varieties (and cannot be
computed from root data alone) are carried as constants tagged
``"provenance": "paper"``.
"""
from __future__ import annotations

from .arrangement import Face
from .roots import (RootDatum, build_root_datum, invert, levi_weyl_order,
                    parabolic_and_levi, weyl_of, weyl_order)

POINTS = ("p1", "p2", "p3")
LINES = ("l12", "l13", "l23")
ALL_SYMBOLS = POINTS + LINES

# rank of the Chow group of the space of complete triangles
COMPLETE_TRIANGLE_K_RANK = 72


def _line(a: int, b: int) -> str:
    a, b = sorted((a, b))
    return f"l{a}{b}"


def chamber_code(w) -> frozenset[str]:
    """The flag drawn for the chamber ``C_w``.

    With ``v = w^{-1}`` the flag is ``(p_{v(1)}, l_{v(1)v(2)})``. Chambers
    sharing a wall differ by ``w -> s_i w``, i.e. by swapping two adjacent
    entries of ``v``, which moves either the point or the line but not both.
    """
    v = invert(w)
    return frozenset({f"p{v[0]}", _line(v[0], v[1])})


def _ordered(code) -> list[str]:
    return [s for s in ALL_SYMBOLS if s in code]


def triangle_code(R: RootDatum, face: Face) -> frozenset[str]:
    poset = R.arrangement.poset
    if face.dim == R.rank:
        return chamber_code(weyl_of(R, face))
    if face.dim == 0:
        return frozenset(ALL_SYMBOLS)
    out: frozenset[str] = frozenset()
    for c in poset.above(face):
        if c.dim == R.rank:
            out |= chamber_code(weyl_of(R, c))
    return out


def _computed(value, how: str) -> dict:
    return {"value": value, "provenance": "computed", "how": how}


def _cited(value, what: str) -> dict:
    return {"value": value, "provenance": "paper", "what": what}


def sl3_report() -> dict:
    R = build_root_datum(2)
    poset = R.arrangement.poset
    dim_g = R.n ** 2 - 1
    n_pos = len(R.positive_roots)
    rows = []
    for face in poset:
        parabolic, levi = parabolic_and_levi(R, face)
        positive_on_face = len(parabolic) - len(levi)
        bundle_rank = R.rank + positive_on_face
        fiber_dim = dim_g - bundle_rank
        # flag variety plus one P^1 per positive Levi root
        assert fiber_dim == n_pos + len(levi) // 2
        row = {
            "face": face.key,
            "dim": face.dim,
            "triangle": _ordered(triangle_code(R, face)),
            "parabolic": sorted(f"e{i}-e{j}" for i, j in parabolic),
            "levi": sorted(f"e{i}-e{j}" for i, j in levi),
            "central_fiber_dim": _computed(fiber_dim, "dim g - bundle rank"),
            "bundle_rank": _computed(bundle_rank, "dim h + #roots positive on the cell"),
        }
        if face.dim == R.rank:
            row["weyl"] = list(weyl_of(R, face))
        if face.dim > 0:
            row["k_rank"] = _computed(weyl_order(R) * levi_weyl_order(R, face),
                                      "|W| * |W_levi| (flag variety, P^1-bundle over it)")
        else:
            row["k_rank"] = _cited(COMPLETE_TRIANGLE_K_RANK,
                                   "rank of the Chow group of complete triangles")
        rows.append(row)

    ray_fiber = n_pos + 1
    multi_ray = {
        "F(2)": {"dim": _cited(5, "smooth, P^1-bundle over a 1-ray central fiber"),
                 "check": ray_fiber + 1},
        "L(2)": {"rank": _cited(3, "rank of the Lie algebra bundle over F(2)"),
                 "check": dim_g - (ray_fiber + 1)},
        "F(3)": {"dim": _cited(6, "smooth, P^1 x P^1-bundle over a 1-ray central fiber"),
                 "check": ray_fiber + 2},
        "rho_fiber": {"generic": _cited(2, "intersection of two 3-dim subalgebras"),
                      "degenerate": _cited(3, "locus p1 = p2, l13 = l23")},
    }
    return {
        "algebra": "sl3",
        "cells": rows,
        "counts": {"cells": len(poset), "chambers": len(poset.chambers),
                   "weyl_order": weyl_order(R)},
        "multi_ray": multi_ray,
    }


def format_report(report: dict) -> str:
    lines = [f"{'face':6} {'dim':>3}  {'fiber':>5} {'rank':>4} {'K':>4}  triangle"]
    for row in report["cells"]:
        k = row["k_rank"]
        tag = "*" if k["provenance"] == "paper" else ""
        lines.append(f"{row['face']:6} {row['dim']:>3}  {row['central_fiber_dim']['value']:>5} "
                     f"{row['bundle_rank']['value']:>4} {str(k['value']) + tag:>4}  "
                     f"{' '.join(row['triangle'])}")
    m = report["multi_ray"]
    lines.append("")
    lines.append(f"F(2) dim {m['F(2)']['dim']['value']}*, L(2) rank {m['L(2)']['rank']['value']}*, "
                 f"F(3) dim {m['F(3)']['dim']['value']}*, rho fiber "
                 f"{m['rho_fiber']['generic']['value']}*/{m['rho_fiber']['degenerate']['value']}*")
    lines.append("* value quoted from the geometry, not computed from root data")
    return "\n".join(lines)
