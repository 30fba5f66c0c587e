"""Geometric cross-checks that sit beside the orbit computation.

Each function returns a list of failure messages (empty when the check
holds) so callers can report witnesses instead of stopping at the first
problem.
"""

from __future__ import annotations

import itertools

import numpy as np

from .gf import FieldDesc
from .linalg import all_points, format_coords, mat2_det, span_points, span_rank
from .orbits import PointData
from .segre import plane_type, segre_points, segre_vector, shamrock
from .tensor import contract, functionals


def planes_with_small_type(F: FieldDesc) -> tuple[set[int], int]:
    """Points lying on a plane spanned by three variety points with some type entry <= 2.

    Returns the point set and the number of spanning triples examined.
    """
    pts = segre_points(F)
    vecs = [segre_vector(F, s) for s in pts]
    covered: set[int] = set()
    triples = 0
    for a, b, c in itertools.combinations(range(len(pts)), 3):
        triples += 1
        if min(plane_type(F, pts[a], pts[b], pts[c])) > 2:
            continue
        basis = [vecs[a], vecs[b], vecs[c]]
        if span_rank(F, basis) < 3:
            continue
        covered |= span_points(F, basis)
    return covered, triples


def check_plane_criterion(F: FieldDesc, data: PointData) -> list[str]:
    """Singular points are exactly the points on planes of type with some entry <= 2."""
    covered, _ = planes_with_small_type(F)
    singular = set(np.flatnonzero(data.singular).tolist())
    coords = all_points(F.q)
    out = []
    for n in sorted(singular - covered)[:1]:
        out.append(f"singular point {n} ({format_coords(coords[n])}) lies on no such plane")
    for n in sorted(covered - singular)[:1]:
        out.append(f"nonsingular point {n} ({format_coords(coords[n])}) lies on such a plane")
    return out


def check_shamrock_ranks(F: FieldDesc, rank: np.ndarray) -> list[str]:
    """Every point of every shamrock has rank at most two."""
    coords = all_points(F.q)
    out = []
    for y in segre_points(F):
        sh = shamrock(F, y)
        bad = [n for n in sorted(sh.indices) if rank[n] > 2]
        if bad:
            out.append(f"shamrock of {y} contains rank-{rank[bad[0]]} point "
                       f"{bad[0]} ({format_coords(coords[bad[0]])})")
    return out


def check_nonsingular_transitive(orbit_id: np.ndarray, data: PointData) -> list[str]:
    ids = np.unique(orbit_id[~data.singular])
    if len(ids) != 1:
        return [f"nonsingular points split into {len(ids)} orbits"]
    if np.any(data.label[orbit_id == ids[0]] != 5):
        return ["the nonsingular orbit contains points not labelled O5"]
    return []


def check_division_property(F: FieldDesc, t) -> list[str]:
    """For a nonsingular tensor, every nonzero contraction is an invertible matrix.

    Multiplication in a 2-dimensional semifield is a nonsingular tensor read
    as a bilinear map; this is the invertibility of its left and right
    multiplication maps.
    """
    out = []
    for d in (1, 2, 3):
        for w in functionals(F, d):
            for lam in range(1, F.q):
                scaled = type(w)(d, tuple(F.mul(lam, c) for c in w.coeffs))
                if mat2_det(F, contract(F, t, scaled)) == 0:
                    out.append(f"contraction of {format_coords(t)} by {scaled} is singular")
    return out
