"""Tensor rank of 2x2x2 tensors: a peeling search and an exhaustive oracle."""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

import numpy as np

from .gf import FieldDesc
from .linalg import all_points, num_points
from .segre import segre_points, segre_vector
from .tensor import is_pure

ORACLE_MAX_Q = 3


@lru_cache(maxsize=None)
def pure_representatives(F: FieldDesc) -> np.ndarray:
    """One vector per Segre point, shape ((q+1)^3, 8)."""
    return np.array([segre_vector(F, s) for s in segre_points(F)], dtype=np.uint8)


@lru_cache(maxsize=None)
def scaled_pure_tensors(F: FieldDesc) -> np.ndarray:
    """Every nonzero pure tensor: each representative times each nonzero scalar."""
    reps = pure_representatives(F).astype(np.int64)
    out = [F.mul_table[lam, reps] for lam in range(1, F.q)]
    return np.ascontiguousarray(np.vstack(out), dtype=np.uint8)


def tensor_rank(F: FieldDesc, t: Sequence[int]) -> int:
    """0 for the zero tensor, 1 if pure, 2 if ``t - s`` is pure for some pure ``s``, else 3."""
    t = tuple(t)
    if not any(t):
        return 0
    if is_pure(F, t):
        return 1
    for s in scaled_pure_tensors(F):
        if is_pure(F, [F.sub(a, int(b)) for a, b in zip(t, s)]):
            return 2
    return 3


def _code(v: np.ndarray, q: int) -> np.ndarray:
    """Base-q integer code of each row (coordinate 0 most significant)."""
    w = q ** np.arange(7, -1, -1, dtype=np.int64)
    return v.astype(np.int64) @ w


@lru_cache(maxsize=None)
def _reachable(F: FieldDesc) -> np.ndarray:
    """rank_of_vector[code] for every vector of F^8, by enumerating linear combinations.

    Combinations of k pure representatives with all coefficients nonzero are
    listed for k = 1, 2, 3; the smallest k reaching a vector is its rank.
    """
    if F.q > ORACLE_MAX_Q:
        raise ValueError(f"the exhaustive rank oracle is limited to q <= {ORACLE_MAX_Q}")
    q, add, mul = F.q, F.add_table, F.mul_table
    reps = pure_representatives(F).astype(np.int64)
    nz = range(1, q)
    ranks = np.full(q**8, 4, dtype=np.uint8)
    ranks[0] = 0
    for k in (1, 2, 3):
        combos = np.array(list(itertools.combinations(range(len(reps)), k)), dtype=np.int64)
        for coeffs in itertools.product(nz, repeat=k):
            v = np.zeros((len(combos), 8), dtype=np.int64)
            for c, col in zip(coeffs, combos.T):
                v = add[v, mul[c, reps[col]]]
            codes = _code(v, q)
            hit = ranks[codes] > k
            ranks[codes[hit]] = k
    return ranks


def rank_oracle(F: FieldDesc, t: Sequence[int]) -> int:
    """Minimal number of pure tensors whose linear span contains ``t`` (q <= 3 only)."""
    r = int(_reachable(F)[int(_code(np.asarray([t]), F.q)[0])])
    if r > 3:
        raise ArithmeticError(f"{t} is not a combination of three pure tensors")
    return r


def rank_oracle_table(F: FieldDesc) -> np.ndarray:
    """Oracle ranks of every point of PG(7,q), in point-index order."""
    pts = all_points(F.q)
    assert len(pts) == num_points(F.q)
    return _reachable(F)[_code(pts, F.q)]
