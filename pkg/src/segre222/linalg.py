"""Vectors, 2x2 matrices and projective points over GF(q).

A projective point is stored through its normalized representative: the
first nonzero coordinate (scanning from coordinate 0) equals 1.  Points of
PG(n-1, q) are ranked as follows: points whose leading 1 sits at position
``j`` form a block of ``q**(n-1-j)`` consecutive indices, blocks ordered by
``j``, and inside a block the tail ``v[j+1:]`` is read as a base-q number
with ``v[j+1]`` most significant.
"""

from __future__ import annotations

from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .gf import FieldDesc

Vec = tuple[int, ...]
Mat2 = tuple[tuple[int, int], tuple[int, int]]


class ProjPoint(NamedTuple):
    coords: Vec
    index: int

    def __str__(self):
        return format_coords(self.coords)


def format_coords(coords: Sequence[int]) -> str:
    return ",".join(str(int(c)) for c in coords)


def parse_coords(text: str, n: int = 8) -> Vec:
    parts = [s for s in text.replace(" ", "").split(",") if s != ""]
    if len(parts) != n:
        raise ValueError(f"expected {n} comma-separated integers, got {len(parts)}")
    return tuple(int(s) for s in parts)


def num_points(q: int, n: int = 8) -> int:
    return (q**n - 1) // (q - 1)


def block_offsets(q: int, n: int = 8) -> list[int]:
    """Index of the first point whose leading 1 is at each position."""
    offs, acc = [], 0
    for j in range(n):
        offs.append(acc)
        acc += q ** (n - 1 - j)
    return offs


def _check(F: FieldDesc, v: Sequence[int]) -> None:
    for c in v:
        if not 0 <= c < F.q:
            raise ValueError(f"coordinate {c} is not an element of {F!r}")


def pg_normalize(F: FieldDesc, v: Sequence[int]) -> ProjPoint:
    _check(F, v)
    lead = next((c for c in v if c), 0)
    if lead == 0:
        raise ValueError("the zero vector is not a projective point")
    s = F.inv(lead)
    coords = tuple(F.mul(s, c) for c in v)
    return ProjPoint(coords, point_index(F, coords))


def point_index(F: FieldDesc, coords: Sequence[int]) -> int:
    """Rank of an already-normalized representative."""
    n, q = len(coords), F.q
    j = next(i for i, c in enumerate(coords) if c)
    if coords[j] != 1:
        raise ValueError(f"{format_coords(coords)} is not normalized")
    idx = 0
    for c in coords[j + 1:]:
        idx = idx * q + c
    return block_offsets(q, n)[j] + idx


def point_from_index(F: FieldDesc, index: int, n: int = 8) -> ProjPoint:
    q = F.q
    if not 0 <= index < num_points(q, n):
        raise IndexError(f"point index {index} out of range for PG({n - 1},{q})")
    offs = block_offsets(q, n)
    j = max(i for i, o in enumerate(offs) if o <= index)
    rest = index - offs[j]
    tail = []
    for _ in range(n - 1 - j):
        rest, c = divmod(rest, q)
        tail.append(c)
    coords = (0,) * j + (1,) + tuple(reversed(tail))
    return ProjPoint(coords, index)


def pg_enumerate(F: FieldDesc, n: int = 8) -> Iterator[ProjPoint]:
    """Every point of PG(n-1, q), once each, in index order."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    idx = 0
    for j in range(n):
        for k in range(F.q ** (n - 1 - j)):
            tail = []
            for _ in range(n - 1 - j):
                k, c = divmod(k, F.q)
                tail.append(c)
            yield ProjPoint((0,) * j + (1,) + tuple(reversed(tail)), idx)
            idx += 1


def all_points(q: int, n: int = 8) -> np.ndarray:
    """All normalized representatives as a ``(num_points, n)`` uint8 array, in index order."""
    blocks = []
    for j in range(n):
        m = n - 1 - j
        tails = np.indices((q,) * m).reshape(m, -1).T if m else np.zeros((1, 0), dtype=int)
        block = np.zeros((len(tails), n), dtype=np.uint8)
        block[:, j] = 1
        block[:, j + 1:] = tails
        blocks.append(block)
    return np.ascontiguousarray(np.vstack(blocks))


def mat2_det(F: FieldDesc, m: Mat2) -> int:
    (a, b), (c, d) = m
    return F.sub(F.mul(a, d), F.mul(b, c))


def mat2_mul(F: FieldDesc, x: Mat2, y: Mat2) -> Mat2:
    return tuple(
        tuple(F.add(F.mul(x[i][0], y[0][j]), F.mul(x[i][1], y[1][j])) for j in range(2))
        for i in range(2)
    )


def mat2_apply(F: FieldDesc, m: Mat2, v: Sequence[int]) -> Vec:
    return (F.add(F.mul(m[0][0], v[0]), F.mul(m[0][1], v[1])),
            F.add(F.mul(m[1][0], v[0]), F.mul(m[1][1], v[1])))


def mat2_inv(F: FieldDesc, m: Mat2) -> Mat2:
    d = mat2_det(F, m)
    if d == 0:
        raise ZeroDivisionError("singular 2x2 matrix")
    s = F.inv(d)
    (a, b), (c, e) = m
    return ((F.mul(s, e), F.mul(s, F.neg(b))), (F.mul(s, F.neg(c)), F.mul(s, a)))


def span_rank(F: FieldDesc, vectors: Sequence[Sequence[int]]) -> int:
    """Dimension of the span, by Gaussian elimination over GF(q)."""
    rows = [list(v) for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        s = F.inv(rows[rank][col])
        rows[rank] = [F.mul(s, x) for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [F.sub(x, F.mul(f, y)) for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def span_points(F: FieldDesc, basis: Sequence[Sequence[int]]) -> set[int]:
    """Indices of all projective points in the span of ``basis``."""
    basis = [tuple(b) for b in basis]
    n = len(basis[0])
    out = set()
    for coeffs in np.ndindex(*(F.q,) * len(basis)):
        if not any(coeffs):
            continue
        v = [0] * n
        for c, b in zip(coeffs, basis):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, b)]
        if any(v):
            out.add(pg_normalize(F, v).index)
    return out
