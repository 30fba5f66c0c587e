import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segre222.gf import field_from_order
from segre222.linalg import all_points, num_points, pg_normalize, span_rank
from segre222.orbits import (
    IDENTITY,
    GroupElement,
    OrbitLabel,
    ResourceGuardError,
    act,
    classify_point,
    compose,
    element_matrix,
    generators,
    gl2_generators,
    identity_element,
    matrix_closure,
    orbit_partition,
    random_element,
)
from segre222.segre import enumerate_segre
from segre222.tensor import basis_tensor, is_nonsingular, is_pure, tensor_add

from conftest import report_for


@pytest.mark.parametrize("q,order", [(2, 6), (3, 48), (4, 180), (5, 480), (7, 2016)])
def test_gl2_generators_generate(q, order):
    F = field_from_order(q)
    gens = gl2_generators(F)
    assert gens[0] == ((1, 1), (0, 1)) and gens[2] == ((0, 1), (1, 0))
    assert gens[1] == ((F.primitive, 0), (0, 1))
    assert len(matrix_closure(F, gens)) == order


def test_generator_count():
    assert len(generators(field_from_order(3))) == 11


def test_act_examples():
    F = field_from_order(2)
    t = basis_tensor(0, 1, 0)
    assert act(F, identity_element(), t) == t
    swap = GroupElement((IDENTITY,) * 3, (2, 1, 3))
    assert act(F, swap, t) == basis_tensor(1, 0, 0)
    shear = GroupElement((((1, 1), (0, 1)), IDENTITY, IDENTITY))
    # (e0 + e1) x e0 x e0
    assert act(F, shear, basis_tensor(1, 0, 0)) == tensor_add(F, basis_tensor(0, 0, 0), basis_tensor(1, 0, 0))


def test_bad_permutation_rejected():
    with pytest.raises(ValueError):
        GroupElement((IDENTITY,) * 3, (1, 1, 2))


def apply_matrix(F, m, t):
    return tuple(F.dot(row, t) for row in m.tolist())


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_group_action_law(q):
    F = field_from_order(q)
    rng = np.random.default_rng(q)
    for _ in range(40):
        e, f = random_element(F, rng), random_element(F, rng)
        t = tuple(int(x) for x in rng.integers(0, q, 8))
        assert act(F, compose(F, e, f), t) == act(F, e, act(F, f, t))
        assert apply_matrix(F, element_matrix(F, e), t) == act(F, e, t)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.lists(st.integers(0, 4), min_size=8, max_size=8))
def test_action_is_invertible_and_linear(seed, coords):
    F = field_from_order(5)
    e = random_element(F, np.random.default_rng(seed))
    m = element_matrix(F, e)
    # invertible over GF(5): the image of the basis spans everything
    assert span_rank(F, m.T.tolist()) == 8
    t = tuple(coords)
    doubled = tuple(F.add(c, c) for c in t)
    assert act(F, e, doubled) == tuple(F.add(c, c) for c in act(F, e, t))


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_generators_preserve_the_variety(q):
    F = field_from_order(q)
    X = enumerate_segre(F)
    coords = {p.coords for p in X}
    for e in generators(F):
        for p in X:
            assert pg_normalize(F, act(F, e, p.coords)).coords in coords


def test_classify_examples():
    F = field_from_order(3)
    e = lambda i, j, k: basis_tensor(i, j, k)
    assert classify_point(F, e(0, 1, 1)) is OrbitLabel.O1
    o2 = tensor_add(F, e(0, 0, 0), e(1, 1, 0))
    assert classify_point(F, o2) is OrbitLabel.O2
    o4 = tensor_add(F, tensor_add(F, e(0, 0, 0), e(0, 1, 1)), e(1, 1, 0))
    assert classify_point(F, o4) is OrbitLabel.O4
    assert classify_point(F, tensor_add(F, e(0, 0, 0), e(1, 1, 1))) is OrbitLabel.O3
    assert classify_point(F, (1, 0, 0, 1, 0, 1, 2, 0)) is OrbitLabel.O5
    with pytest.raises(ValueError):
        classify_point(F, (0,) * 8)


def test_o4_example_is_singular_with_square_determinant_form():
    # det(x slice0 + y slice1) = x^2
    F = field_from_order(5)
    t = (1, 0, 0, 1, 0, 0, 1, 0)
    assert not is_nonsingular(F, t) and not is_pure(F, t)
    assert classify_point(F, t) is OrbitLabel.O4


@pytest.mark.parametrize("q", [2, 3])
def test_pointwise_classifier_matches_kernel_labels(q):
    F = field_from_order(q)
    rep = report_for(q)
    for n, t in enumerate(all_points(q).tolist()):
        assert classify_point(F, t).value == f"O{rep.data.label[n]}"


@pytest.mark.parametrize("q", [2, 3])
def test_partition_shape(q):
    F = field_from_order(q)
    ids = orbit_partition(F)
    assert len(ids) == num_points(q)
    assert ids.max() == 4
    # ids numbered by least member
    firsts = [int(np.flatnonzero(ids == o)[0]) for o in range(5)]
    assert firsts == sorted(firsts) and firsts[0] == 0


def test_resource_guard():
    with pytest.raises(ResourceGuardError):
        orbit_partition(field_from_order(8))


def test_report_serialization_q2():
    rep = report_for(2)
    body = json.loads(rep.to_json())
    assert list(body) == ["q", "points", "orbits", "verified"]
    assert sum(o["size"] for o in body["orbits"]) == 255
    assert list(body["orbits"][0]) == ["label", "size", "representative", "rank",
                                       "flattening_ranks", "singular"]
    assert "meta" in json.loads(rep.to_json(include_meta=True))
    rows = rep.to_csv().splitlines()
    assert rows[0] == "index,coords,rank,singular,label,orbit_id"
    assert len(rows) == 256


def test_verify_reports_failures_with_witness(monkeypatch):
    import segre222.orbits as orbits

    real = orbits.labels_from_invariants

    def broken(singular, flat, rank):
        lab = real(singular, flat, rank)
        lab[7] = 1
        return lab

    monkeypatch.setattr(orbits, "labels_from_invariants", broken)
    rep = orbits.verify_theorems(field_from_order(2))
    assert not rep.ok
    assert not rep.verified["classifier_matches"]
    assert any("point" in msg and "(" in msg for msg in rep.failures)


@pytest.mark.slow
def test_stress_tier_q7():
    rep = report_for(7)
    assert rep.ok, rep.failures
    assert [o.size for o in rep.orbits] == [512, 526848, 8064, 129024, 296352]
    assert sum(o.size for o in rep.orbits) == num_points(7)
