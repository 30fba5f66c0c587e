"""2x2x2 tensors over GF(q).

A tensor is a length-8 tuple of field elements with ``a[i][j][k]`` stored at
position ``4*i + 2*j + k``.  Directions are numbered 1, 2, 3 as the tensor
factors.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .gf import FieldDesc
from .linalg import Mat2, Vec, mat2_det

Tensor = tuple[int, ...]

ZERO = (0,) * 8


def idx(i: int, j: int, k: int) -> int:
    return 4 * i + 2 * j + k


def basis_tensor(i: int, j: int, k: int) -> Tensor:
    t = [0] * 8
    t[idx(i, j, k)] = 1
    return tuple(t)


def outer(F: FieldDesc, u: Sequence[int], v: Sequence[int], w: Sequence[int]) -> Tensor:
    """The pure tensor u (x) v (x) w."""
    return tuple(
        F.mul(F.mul(u[i], v[j]), w[k]) for i in range(2) for j in range(2) for k in range(2)
    )


def tensor_add(F: FieldDesc, s: Sequence[int], t: Sequence[int]) -> Tensor:
    return tuple(F.add(a, b) for a, b in zip(s, t))


def tensor_scale(F: FieldDesc, lam: int, t: Sequence[int]) -> Tensor:
    return tuple(F.mul(lam, a) for a in t)


def as_tensor(F: FieldDesc, coords: Sequence[int]) -> Tensor:
    t = tuple(int(c) for c in coords)
    if len(t) != 8:
        raise ValueError(f"a 2x2x2 tensor has 8 coordinates, got {len(t)}")
    for c in t:
        if not 0 <= c < F.q:
            raise ValueError(f"coordinate {c} is not an element of {F!r}")
    return t


class Functional(NamedTuple):
    """A nonzero linear form on one tensor factor, in dual-basis coordinates."""

    direction: int
    coeffs: Vec


def slices(t: Sequence[int], direction: int) -> tuple[Mat2, Mat2]:
    """The two basis contractions in ``direction``.

    For direction 1 these are ``A_i = a[i][.][.]``; for direction 2,
    ``a[.][j][.]`` (rows i, columns k); for direction 3, ``a[.][.][k]``.
    """
    if direction == 1:
        get = lambda s, r, c: t[idx(s, r, c)]
    elif direction == 2:
        get = lambda s, r, c: t[idx(r, s, c)]
    elif direction == 3:
        get = lambda s, r, c: t[idx(r, c, s)]
    else:
        raise ValueError(f"direction must be 1, 2 or 3, got {direction}")
    return tuple(((get(s, 0, 0), get(s, 0, 1)), (get(s, 1, 0), get(s, 1, 1))) for s in (0, 1))


def contract(F: FieldDesc, t: Sequence[int], w: Functional) -> Mat2:
    x0, x1 = w.coeffs
    if x0 == 0 and x1 == 0:
        raise ValueError("contraction by the zero functional")
    a, b = slices(t, w.direction)
    return tuple(
        tuple(F.add(F.mul(x0, a[r][c]), F.mul(x1, b[r][c])) for c in range(2)) for r in range(2)
    )


def pg1_points(F: FieldDesc) -> list[Vec]:
    """Points of PG(1, q) in the fixed order <e0>, <e1>, <e0 + l e1> for l = 1..q-1."""
    return [(1, 0), (0, 1)] + [(1, lam) for lam in range(1, F.q)]


def functionals(F: FieldDesc, direction: int) -> list[Functional]:
    return [Functional(direction, c) for c in pg1_points(F)]


def _rank_2x4(F: FieldDesc, r0: Sequence[int], r1: Sequence[int]) -> int:
    if not any(r0) and not any(r1):
        return 0
    for m in range(4):
        for n in range(m + 1, 4):
            if F.mul(r0[m], r1[n]) != F.mul(r0[n], r1[m]):
                return 2
    return 1


def flattening_rank(F: FieldDesc, t: Sequence[int], direction: int) -> int:
    a, b = slices(t, direction)
    return _rank_2x4(F, a[0] + a[1], b[0] + b[1])


def flattening_ranks(F: FieldDesc, t: Sequence[int]) -> tuple[int, int, int]:
    return tuple(flattening_rank(F, t, d) for d in (1, 2, 3))


def is_pure(F: FieldDesc, t: Sequence[int]) -> bool:
    return any(t) and all(flattening_rank(F, t, d) == 1 for d in (1, 2, 3))


def is_nonsingular(F: FieldDesc, t: Sequence[int]) -> bool:
    """Every contraction by every nonzero functional in every direction is invertible.

    Scans the q+1 projective functionals of each direction; scaling a
    functional only scales the determinant.
    """
    if not any(t):
        return False
    for d in (1, 2, 3):
        for w in functionals(F, d):
            if mat2_det(F, contract(F, t, w)) == 0:
                return False
    return True


def hyperdeterminant(F: FieldDesc, t: Sequence[int]) -> int:
    """Cayley's hyperdeterminant: the discriminant of ``det(x A_0 + y A_1)``."""
    a = lambda i, j, k: t[idx(i, j, k)]
    m, s = F.mul, F.sub
    middle = F.add(
        s(s(m(a(0, 0, 0), a(1, 1, 1)), m(a(0, 0, 1), a(1, 1, 0))), m(a(0, 1, 0), a(1, 0, 1))),
        m(a(0, 1, 1), a(1, 0, 0)),
    )
    det0 = s(m(a(0, 0, 0), a(0, 1, 1)), m(a(0, 0, 1), a(0, 1, 0)))
    det1 = s(m(a(1, 0, 0), a(1, 1, 1)), m(a(1, 0, 1), a(1, 1, 0)))
    four = F.add(F.add(1, 1), F.add(1, 1))
    return s(m(middle, middle), m(four, m(det0, det1)))


def is_nonsingular_fast(F: FieldDesc, t: Sequence[int]) -> bool:
    """Odd-characteristic shortcut: nonsingular iff the hyperdeterminant is a non-square."""
    if F.p == 2:
        raise ValueError("the hyperdeterminant test only applies in odd characteristic")
    return any(t) and not F.is_square(hyperdeterminant(F, t))
