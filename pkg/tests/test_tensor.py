import itertools
import random

import pytest

from segre222.gf import field_from_order
from segre222.linalg import all_points, mat2_det, span_rank
from segre222.tensor import (
    Functional,
    basis_tensor,
    contract,
    flattening_ranks,
    functionals,
    hyperdeterminant,
    idx,
    is_nonsingular,
    is_nonsingular_fast,
    is_pure,
    outer,
    slices,
    tensor_add,
    tensor_scale,
)

E000 = basis_tensor(0, 0, 0)
E111 = basis_tensor(1, 1, 1)
# multiplication table of GF(4) over GF(2) in the basis (1, w): a_ijk = coefficient of
# basis element k in (basis i) * (basis j)
GF4_MULT = (1, 0, 0, 1, 0, 1, 1, 1)


def gf4_structure_constants():
    """Expand products of the basis (1, w) of GF(4) using its own arithmetic."""
    F4 = field_from_order(4)
    basis = [1, 2]  # 1 and w
    t = [0] * 8
    for i, j in itertools.product(range(2), repeat=2):
        prod = F4.mul(basis[i], basis[j])
        t[idx(i, j, 0)] = prod % 2   # coefficient of 1
        t[idx(i, j, 1)] = prod // 2  # coefficient of w
    return tuple(t)


def test_gf4_tensor_is_the_multiplication_table():
    assert gf4_structure_constants() == GF4_MULT


def test_contract_examples():
    F = field_from_order(2)
    assert contract(F, E000, Functional(1, (1, 0))) == ((1, 0), (0, 0))
    assert contract(F, GF4_MULT, Functional(1, (0, 1))) == ((0, 1), (1, 1))
    assert contract(F, GF4_MULT, Functional(1, (1, 1))) == ((1, 1), (1, 0))


def test_contract_rejects_zero_functional():
    with pytest.raises(ValueError):
        contract(field_from_order(2), E000, Functional(1, (0, 0)))


def test_contraction_of_pure_tensor_matches_definition():
    # w(v1 x v2 x v3) = w(v_i) * (remaining outer product)
    F = field_from_order(5)
    rng = random.Random(3)
    for _ in range(50):
        v = [tuple(rng.randrange(5) for _ in range(2)) for _ in range(3)]
        t = outer(F, *v)
        for d in (1, 2, 3):
            w = (rng.randrange(1, 5), rng.randrange(5))
            scale = F.add(F.mul(w[0], v[d - 1][0]), F.mul(w[1], v[d - 1][1]))
            rest = [v[m] for m in range(3) if m != d - 1]
            expect = tuple(tuple(F.mul(scale, F.mul(rest[0][r], rest[1][c])) for c in range(2))
                           for r in range(2))
            assert contract(F, t, Functional(d, w)) == expect


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_contraction_is_linear(q):
    F = field_from_order(q)
    rng = random.Random(q)
    for _ in range(100):
        t = tuple(rng.randrange(q) for _ in range(8))
        d = rng.choice((1, 2, 3))
        w1 = (rng.randrange(q), rng.randrange(1, q))
        w2 = (rng.randrange(1, q), rng.randrange(q))
        a, b = rng.randrange(q), rng.randrange(q)
        comb = tuple(F.add(F.mul(a, x), F.mul(b, y)) for x, y in zip(w1, w2))
        if not any(comb):
            continue
        lhs = contract(F, t, Functional(d, comb))
        m1, m2 = contract(F, t, Functional(d, w1)), contract(F, t, Functional(d, w2))
        rhs = tuple(tuple(F.add(F.mul(a, m1[r][c]), F.mul(b, m2[r][c])) for c in range(2))
                    for r in range(2))
        assert lhs == rhs


def flattening_rank_oracle(F, t, d):
    """Gaussian-elimination rank of the two basis slices as length-4 vectors."""
    s0, s1 = slices(t, d)
    return span_rank(F, [s0[0] + s0[1], s1[0] + s1[1]])


def test_flattening_examples():
    F = field_from_order(3)
    t = tensor_add(F, basis_tensor(0, 0, 0), basis_tensor(1, 1, 0))  # (e0 e0 + e1 e1) e0
    assert tuple(flattening_rank_oracle(F, t, d) for d in (1, 2, 3)) == (2, 2, 1)
    assert flattening_ranks(F, t) == (2, 2, 1)
    assert flattening_ranks(F, (0,) * 8) == (0, 0, 0)
    assert flattening_ranks(F, outer(F, (1, 2), (0, 1), (1, 1))) == (1, 1, 1)


@pytest.mark.parametrize("q", [2, 3])
def test_flattening_rank_matches_elimination(q):
    F = field_from_order(q)
    for t in all_points(q).tolist():
        assert flattening_ranks(F, t) == tuple(flattening_rank_oracle(F, t, d) for d in (1, 2, 3))


def test_purity_examples():
    F = field_from_order(3)
    assert is_pure(F, E000)
    assert not is_pure(F, tensor_add(F, E000, E111))
    assert not is_pure(F, (0,) * 8)


def test_nonsingular_examples():
    F = field_from_order(2)
    assert is_nonsingular(F, GF4_MULT)
    assert not is_nonsingular(F, tensor_add(F, E000, E111))
    assert not is_nonsingular(F, E000)
    assert not is_nonsingular(F, (0,) * 8)


def test_gf4_tensor_every_contraction_invertible():
    # the determinant form x^2 + xy + y^2 has no projective root over GF(2)
    F = field_from_order(2)
    for d in (1, 2, 3):
        for x, y in [(1, 0), (0, 1), (1, 1)]:
            assert mat2_det(F, contract(F, GF4_MULT, Functional(d, (x, y)))) == 1


def test_pure_tensors_are_singular_everywhere(small_field):
    F = small_field
    rng = random.Random(F.q)
    for _ in range(30):
        v = [(1, rng.randrange(F.q)) for _ in range(3)]
        assert not is_nonsingular(F, outer(F, *v))
        assert hyperdeterminant(F, outer(F, *v)) == 0


def discriminant_oracle(F, t):
    """c1^2 - 4 c2 c0 for det(x A0 + y A1) = c2 x^2 + c1 xy + c0 y^2, coefficients by evaluation."""
    a0, a1 = slices(t, 1)
    c2 = mat2_det(F, a0)
    c0 = mat2_det(F, a1)
    both = tuple(tuple(F.add(a0[r][c], a1[r][c]) for c in range(2)) for r in range(2))
    c1 = F.sub(F.sub(mat2_det(F, both), c2), c0)
    four = F.add(F.add(1, 1), F.add(1, 1))
    return F.sub(F.mul(c1, c1), F.mul(four, F.mul(c2, c0)))


def test_hyperdeterminant_examples():
    F = field_from_order(3)
    t = tensor_add(F, E000, E111)
    assert hyperdeterminant(F, t) == 1 == discriminant_oracle(F, t)
    assert not is_nonsingular(F, t)
    # slices I and [[0,1],[2,0]]
    t2 = (1, 0, 0, 1, 0, 1, 2, 0)
    assert hyperdeterminant(F, t2) == 2 == discriminant_oracle(F, t2)
    assert is_nonsingular(F, t2)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_hyperdeterminant_is_the_discriminant(q):
    F = field_from_order(q)
    rng = random.Random(7 * q)
    for _ in range(400):
        t = tuple(rng.randrange(q) for _ in range(8))
        assert hyperdeterminant(F, t) == discriminant_oracle(F, t)


def test_fast_path_refuses_char_2():
    with pytest.raises(ValueError):
        is_nonsingular_fast(field_from_order(4), GF4_MULT)


@pytest.mark.parametrize("q", [2, 3])
def test_scaling_preserves_singularity(q):
    F = field_from_order(q)
    for t in all_points(q).tolist():
        ns = is_nonsingular(F, t)
        for lam in range(2, q):
            assert is_nonsingular(F, tensor_scale(F, lam, t)) == ns


def singular_directions(F, t):
    return [any(mat2_det(F, contract(F, t, w)) == 0 for w in functionals(F, d)) for d in (1, 2, 3)]


@pytest.mark.parametrize("q", [2, 3])
def test_direction_symmetry_exhaustive(q):
    F = field_from_order(q)
    for t in itertools.product(range(q), repeat=8):
        if any(t):
            assert len(set(singular_directions(F, t))) == 1


@pytest.mark.parametrize("q", [4, 5, 7])
def test_direction_symmetry_sampled(q):
    F = field_from_order(q)
    rng = random.Random(q)
    for _ in range(1500):
        t = tuple(rng.randrange(q) for _ in range(8))
        if any(t):
            assert len(set(singular_directions(F, t))) == 1


@pytest.mark.parametrize("q", [3, 5])
def test_fast_path_agrees_on_samples(q):
    F = field_from_order(q)
    rng = random.Random(11)
    for _ in range(500):
        t = tuple(rng.randrange(q) for _ in range(8))
        if any(t):
            assert is_nonsingular_fast(F, t) == is_nonsingular(F, t)


@pytest.mark.parametrize("q", [2, 3])
def test_pure_implies_zero_hyperdeterminant_exhaustive(q):
    F = field_from_order(q)
    for t in all_points(q).tolist():
        if is_pure(F, t):
            assert hyperdeterminant(F, t) == 0
