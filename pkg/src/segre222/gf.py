"""Table-backed arithmetic in small finite fields GF(p^e), q = p^e <= 16.

Elements are plain ints in ``[0, q)``: the polynomial ``c0 + c1 x + ...``
over GF(p) is stored as ``c0 + c1*p + c2*p**2 + ...``.  The defining
polynomial is the lexicographically smallest monic irreducible of degree
``e`` (coefficients compared constant term first), so encodings are
reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_ORDER = 16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def factor_prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise if q is not a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            e, r = 0, q
            while r % p == 0:
                r //= p
                e += 1
            if r == 1:
                return p, e
            break
    raise FieldError(f"{q} is not a prime power")


# -- coefficient-list polynomials over GF(p), constant term first ----------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        a = _trim(a)
    return a


def _polymul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return out


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(_trim(poly)) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _polymod(poly, list(low) + [1], p):
                return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple[int, ...]:
    for low in itertools.product(range(p), repeat=e):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible of degree {e} over GF({p})")  # pragma: no cover


def _decode(v: int, p: int, e: int) -> list[int]:
    return [(v // p**i) % p for i in range(e)]


def _encode(coeffs, p: int) -> int:
    return sum(c * p**i for i, c in enumerate(coeffs))


@dataclass(frozen=True, eq=False)
class FieldDesc:
    """A tabulated finite field.  Immutable; share freely between threads."""

    p: int
    e: int
    q: int
    modulus: tuple[int, ...]
    primitive: int
    add_table: np.ndarray = field(repr=False)
    mul_table: np.ndarray = field(repr=False)
    neg_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)
    exp_table: np.ndarray = field(repr=False)
    sub_table: np.ndarray = field(repr=False)
    square_table: np.ndarray = field(repr=False)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, FieldDesc) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_table[a, b])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse in {self!r}")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError(f"0 has no inverse in {self!r}")
            return 1 if n == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * n) % (self.q - 1)])

    def is_square(self, a: int) -> bool:
        return bool(self.square_table[a])

    def dot(self, xs, ys) -> int:
        acc = 0
        for x, y in zip(xs, ys):
            acc = self.add_table[acc, self.mul_table[x, y]]
        return int(acc)


@lru_cache(maxsize=None)
def field_new(p: int, e: int = 1) -> FieldDesc:
    """Build GF(p^e).  Cached, so ``field_new(3, 1) is field_new(3, 1)``."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if e < 1:
        raise FieldError(f"extension degree must be >= 1, got {e}")
    q = p**e
    if q > MAX_ORDER:
        raise FieldError(f"GF({q}) exceeds the supported order {MAX_ORDER}")

    modulus = smallest_irreducible(p, e)
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    polys = [_decode(v, p, e) for v in range(q)]
    for a in range(q):
        for b in range(q):
            add[a, b] = _encode([(x + y) % p for x, y in zip(polys[a], polys[b])], p)
            prod = _polymod(_polymul(_trim(polys[a]), _trim(polys[b]), p), list(modulus), p)
            mul[a, b] = _encode(prod, p)

    primitive = None
    for g in range(1, q):
        seen, x = set(), 1
        for _ in range(q - 1):
            seen.add(x)
            x = int(mul[x, g])
        if len(seen) == q - 1:
            primitive = g
            break
    assert primitive is not None

    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    x = 1
    for k in range(q - 1):
        exp[k] = x
        log[x] = k
        x = int(mul[x, primitive])
    # rebuild the multiplication table from log/antilog and check it agrees
    for a in range(1, q):
        for b in range(1, q):
            assert mul[a, b] == exp[(log[a] + log[b]) % (q - 1)]

    neg = np.array([int(np.flatnonzero(add[a] == 0)[0]) for a in range(q)], dtype=np.int64)
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = exp[(-log[a]) % (q - 1)]
        assert mul[a, inv[a]] == 1
    sub = np.ascontiguousarray(add[:, neg])
    squares = np.zeros(q, dtype=bool)
    squares[mul[np.arange(q), np.arange(q)]] = True

    for arr in (add, mul, neg, inv, log, exp, sub, squares):
        arr.setflags(write=False)
    return FieldDesc(
        p=p, e=e, q=q, modulus=modulus, primitive=primitive,
        add_table=add, mul_table=mul, neg_table=neg, inv_table=inv,
        log_table=log, exp_table=exp, sub_table=sub, square_table=squares,
    )


def field_from_order(q: int) -> FieldDesc:
    p, e = factor_prime_power(q)
    return field_new(p, e)


def is_square(F: FieldDesc, a: int) -> bool:
    """True iff ``x*x == a`` has a solution.

    Uses Euler's criterion for odd q; every element is a square when q is even.
    """
    if F.p == 2 or a == 0:
        return True
    return F.pow(a, (F.q - 1) // 2) == 1
