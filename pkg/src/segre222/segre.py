"""The Segre variety of three projective lines inside PG(7, q).

Covers the embedding, the three lines and three hyperbolic quadrics through
a variety point, the solids ("leaves") they span, shamrocks, and the
line/plane types of spanning point sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .gf import FieldDesc
from .linalg import ProjPoint, Vec, format_coords, pg_normalize, span_points, span_rank
from .tensor import outer, pg1_points


class SegrePoint(NamedTuple):
    y1: Vec
    y2: Vec
    y3: Vec

    def __str__(self):
        return " ".join(f"({a},{b})" for a, b in self)


def _normalize2(F: FieldDesc, v: Sequence[int]) -> Vec:
    lead = v[0] if v[0] else v[1]
    if lead == 0:
        raise ValueError("zero vector is not a point of PG(1,q)")
    s = F.inv(lead)
    return (F.mul(s, v[0]), F.mul(s, v[1]))


def segre_point(F: FieldDesc, y1, y2, y3) -> SegrePoint:
    return SegrePoint(_normalize2(F, y1), _normalize2(F, y2), _normalize2(F, y3))


def segre_points(F: FieldDesc) -> list[SegrePoint]:
    """All (q+1)^3 triples, factor 1 varying slowest."""
    line = pg1_points(F)
    return [SegrePoint(a, b, c) for a, b, c in itertools.product(line, repeat=3)]


def segre_vector(F: FieldDesc, s: SegrePoint) -> tuple[int, ...]:
    return outer(F, *s)


def segre_embed(F: FieldDesc, s: SegrePoint) -> ProjPoint:
    return pg_normalize(F, segre_vector(F, s))


def enumerate_segre(F: FieldDesc) -> frozenset[ProjPoint]:
    return frozenset(segre_embed(F, s) for s in segre_points(F))


def _replace(s: SegrePoint, pos: int, v: Vec) -> SegrePoint:
    parts = list(s)
    parts[pos - 1] = v
    return SegrePoint(*parts)


def line_on_variety(F: FieldDesc, y: SegrePoint, i: int) -> frozenset[ProjPoint]:
    """L_i(y): vary factor ``i`` over PG(1,q), keep the other two fixed."""
    return frozenset(segre_embed(F, _replace(y, i, v)) for v in pg1_points(F))


def _other(k: int) -> tuple[int, int]:
    if k not in (1, 2, 3):
        raise ValueError(f"factor index must be 1, 2 or 3, got {k}")
    return tuple(d for d in (1, 2, 3) if d != k)


def quadric_triples(F: FieldDesc, y: SegrePoint, k: int) -> list[SegrePoint]:
    i, j = _other(k)
    return [
        _replace(_replace(y, i, u), j, v)
        for u, v in itertools.product(pg1_points(F), repeat=2)
    ]


def quadric(F: FieldDesc, y: SegrePoint, k: int) -> frozenset[ProjPoint]:
    """Q_k(y): vary the two factors other than ``k``."""
    return frozenset(segre_embed(F, s) for s in quadric_triples(F, y, k))


@dataclass(frozen=True)
class Leaf:
    """The solid spanned by Q_k(y), as a basis plus the set of point indices."""

    field: FieldDesc
    base: SegrePoint
    k: int
    basis: tuple[tuple[int, ...], ...]
    indices: frozenset[int]

    def __len__(self):
        return len(self.indices)

    def __contains__(self, index: int) -> bool:
        return index in self.indices

    def contains_vector(self, v: Sequence[int]) -> bool:
        """Algebraic membership: adding ``v`` does not grow the span."""
        return span_rank(self.field, list(self.basis) + [tuple(v)]) == len(self.basis)


def leaf_span(F: FieldDesc, y: SegrePoint, k: int) -> Leaf:
    i, j = _other(k)
    e0, e1 = (1, 0), (0, 1)
    basis = tuple(
        segre_vector(F, _replace(_replace(y, i, u), j, v))
        for u, v in itertools.product((e0, e1), repeat=2)
    )
    assert span_rank(F, basis) == 4
    return Leaf(F, y, k, basis, frozenset(span_points(F, basis)))


@dataclass(frozen=True)
class Shamrock:
    base: SegrePoint
    leaves: tuple[Leaf, Leaf, Leaf]
    indices: frozenset[int]

    def __len__(self):
        return len(self.indices)

    def __contains__(self, index: int) -> bool:
        return index in self.indices

    def summary(self) -> dict:
        return {
            "base": str(self.base),
            "leaf_sizes": [len(leaf) for leaf in self.leaves],
            "union_size": len(self),
        }


def shamrock(F: FieldDesc, y: SegrePoint) -> Shamrock:
    leaves = tuple(leaf_span(F, y, k) for k in (1, 2, 3))
    return Shamrock(y, leaves, frozenset().union(*(leaf.indices for leaf in leaves)))


def line_type(F: FieldDesc, y: SegrePoint, z: SegrePoint) -> tuple[int, int, int]:
    return tuple(span_rank(F, [a, b]) for a, b in zip(y, z))


def plane_type(F: FieldDesc, y: SegrePoint, z: SegrePoint, w: SegrePoint) -> tuple[int, int, int]:
    norm = lambda v: _normalize2(F, v)
    return tuple(len({norm(a), norm(b), norm(c)}) for a, b, c in zip(y, z, w))


def format_segre_point(s: SegrePoint) -> str:
    return ";".join(format_coords(v) for v in s)


def parse_segre_point(F: FieldDesc, text: str) -> SegrePoint:
    """Parse ``"a,b;c,d;e,f"`` into a normalized SegrePoint."""
    parts = [p for p in text.replace(" ", "").split(";")]
    if len(parts) != 3:
        raise ValueError("a Segre point needs three coordinate pairs separated by ';'")
    pairs = []
    for part in parts:
        xs = [int(s) for s in part.split(",")]
        if len(xs) != 2 or not all(0 <= x < F.q for x in xs):
            raise ValueError(f"bad PG(1,{F.q}) point: {part!r}")
        pairs.append(xs)
    return segre_point(F, *pairs)
