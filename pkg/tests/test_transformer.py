from itertools import combinations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from iptt.ensembles import ginibre
from iptt.errors import BadBounds, DimensionMismatch, HypothesisViolated, NotProbability
from iptt.matcore import op_norm
from iptt.transformer import (
    IptiTransformer,
    OperatorField,
    apply,
    apply_adjoint,
    deviation_moment,
    diameter_infinity,
    field_mean,
    field_variance,
    gen_field,
    korkine_lhs,
    korkine_rhs,
    radius_infinity,
    variance_centered,
    variance_pairwise,
)

from conftest import atoms, seeds

dims8 = st.integers(1, 8)
atoms6 = st.integers(1, 6)


def test_apply_examples():
    X = ginibre(np.random.default_rng(0), 3)
    I3 = np.eye(3)
    np.testing.assert_allclose(apply(IptiTransformer.from_lists([1.0], [I3], [I3]), X), X)
    A = np.diag([1.0, 2.0])
    I2 = np.eye(2)
    T = IptiTransformer.from_lists([0.5, 0.5], [A, I2], [I2, A])
    np.testing.assert_allclose(apply(T, I2), A)
    T = IptiTransformer.from_lists([1.0], [2.0], [3.0])
    np.testing.assert_allclose(apply(T, [[1.0]]), [[6.0]])
    with pytest.raises(DimensionMismatch):
        apply(T, np.eye(2))


def test_field_construction_errors():
    with pytest.raises(DimensionMismatch):
        OperatorField([0.5, 0.5], [np.eye(2)])
    with pytest.raises(HypothesisViolated):
        OperatorField([1.0], [[[0.0, 1.0], [0.0, 0.0]]], is_self_adjoint=True)
    with pytest.raises(HypothesisViolated):
        OperatorField([0.5, 0.5], [[[0, 1], [0, 0]], [[0, 0], [1, 0]]], is_commuting_normal=True)
    with pytest.raises(HypothesisViolated):
        OperatorField([-1.0], [np.eye(2)])
    with pytest.raises(DimensionMismatch):
        IptiTransformer(OperatorField([1.0], [np.eye(2)]), OperatorField([1.0], [np.eye(3)]))
    with pytest.raises(DimensionMismatch):
        IptiTransformer(OperatorField([0.5, 0.5], [1.0, 2.0]), OperatorField([0.4, 0.6], [1.0, 2.0]))


def test_mean_and_variance_examples():
    F = OperatorField([0.5, 0.5], [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
    np.testing.assert_allclose(field_mean(F), 0.5 * np.eye(2))
    np.testing.assert_allclose(field_variance(F), 0.25 * np.eye(2), atol=1e-15)
    A = ginibre(np.random.default_rng(1), 3)
    np.testing.assert_allclose(field_mean(OperatorField([1.0], [A])), A)
    C = OperatorField([0.2, 0.3, 0.5], [A, A, A])
    np.testing.assert_allclose(field_mean(C), A, atol=1e-15)
    np.testing.assert_allclose(field_variance(C), 0, atol=1e-14)
    S = OperatorField([0.5, 0.5], [-1.0, 1.0])
    np.testing.assert_allclose(field_variance(S), [[1.0]])
    with pytest.raises(NotProbability):
        field_variance(OperatorField([1.0, 1.0], [1.0, 2.0]))


def test_korkine_examples():
    A = ginibre(np.random.default_rng(2), 2)
    X = ginibre(np.random.default_rng(3), 2)
    const = OperatorField([0.5, 0.5], [A, A])
    np.testing.assert_allclose(korkine_lhs(IptiTransformer(const, const), X), 0, atol=1e-14)
    s = OperatorField([0.5, 0.5], [-1.0, 1.0])
    np.testing.assert_allclose(korkine_lhs(IptiTransformer(s, s), [[1.0]]), [[1.0]])
    one = OperatorField([1.0], [A])
    np.testing.assert_allclose(korkine_lhs(IptiTransformer(one, one), X), 0, atol=1e-14)
    with pytest.raises(NotProbability):
        korkine_rhs(IptiTransformer.from_lists([1.0, 1.0], [1.0, 2.0], [1.0, 2.0]), [[1.0]])


def test_korkine_two_atom_expansion(rng):
    A1, A2, B1, B2, X = (ginibre(rng, 3) for _ in range(5))
    T = IptiTransformer.from_lists([0.5, 0.5], [A1, A2], [B1, B2])
    expect = 0.25 * (A1 - A2) @ X @ (B1 - B2)
    np.testing.assert_allclose(korkine_rhs(T, X), expect, atol=1e-13)
    np.testing.assert_allclose(korkine_lhs(T, X), expect, atol=1e-13)


@given(seeds, dims8, atoms6)
def test_korkine_identity(seed, n, k):
    rng = np.random.default_rng(seed)
    F = gen_field("general", k, n, rng)
    T = IptiTransformer(F, OperatorField(F.weights, [ginibre(rng, n) for _ in range(k)]))
    X = ginibre(rng, n)
    L, R = korkine_lhs(T, X), korkine_rhs(T, X)
    assert np.linalg.norm(L - R) <= 1e-10 * max(np.linalg.norm(L), np.linalg.norm(R), 1)


@given(seeds, dims8, atoms6)
def test_variance_three_forms(seed, n, k):
    F = gen_field("general", k, n, seed)
    V1, V2, V3 = field_variance(F), variance_pairwise(F), variance_centered(F)
    scale = max(np.linalg.norm(V1), 1)
    assert np.linalg.norm(V1 - V2) <= 1e-10 * scale
    assert np.linalg.norm(V1 - V3) <= 1e-10 * scale
    assert np.linalg.eigvalsh(V1).min() >= -1e-10 * scale


@given(seeds, dims8, atoms6)
def test_deviation_decomposition(seed, n, k):
    rng = np.random.default_rng(seed)
    F = gen_field("general", k, n, rng)
    B = ginibre(rng, n)
    m = field_mean(F)
    lhs = deviation_moment(F, B)
    rhs = variance_centered(F) + (m - B).conj().T @ (m - B)
    assert np.linalg.norm(lhs - rhs) <= 1e-10 * max(np.linalg.norm(lhs), 1)


@given(seeds, dims8, atoms6)
def test_apply_linear_and_adjoint(seed, n, k):
    rng = np.random.default_rng(seed)
    F = gen_field("general", k, n, rng)
    T = IptiTransformer(F, OperatorField(F.weights, [ginibre(rng, n) for _ in range(k)]))
    X, Y = ginibre(rng, n), ginibre(rng, n)
    a, b = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
    lin = apply(T, a * X + b * Y) - a * apply(T, X) - b * apply(T, Y)
    assert np.abs(lin).max() <= 1e-10 * max(1, np.abs(apply(T, X)).max() * (abs(a) + abs(b)))
    # <T X, Y>_HS = <X, T* Y>_HS
    lhs = np.vdot(Y, apply(T, X))
    rhs = np.vdot(apply_adjoint(T, Y), X)
    assert abs(lhs - rhs) <= 1e-10 * max(1, abs(lhs))


def test_radius_examples(rng):
    A = ginibre(rng, 2)
    assert radius_infinity(OperatorField([0.5, 0.5], [A, A])) == 0
    assert radius_infinity(OperatorField([0.5, 0.5], [-1.0, 1.0])) == pytest.approx(1)
    I = np.eye(3)
    assert radius_infinity(OperatorField([0.5, 0.5], [0 * I, 2 * I])) == pytest.approx(1)


@given(seeds, st.integers(1, 4), st.integers(1, 4))
def test_radius_diameter_bracket(seed, n, k):
    F = gen_field("general", k, n, seed)
    d = diameter_infinity(F)
    r = radius_infinity(F, sweeps=10)
    assert d / 2 - 1e-12 <= r <= d + 1e-12


def test_gen_field_examples():
    F = gen_field("commuting_normal_disk", 2, 4, 11)
    for A, B in combinations(F.ops, 2):
        assert op_norm(A @ B - B @ A) <= 1e-10
    H = gen_field("hermitian_bounded", 5, 3, 12)
    w = np.linalg.eigvalsh(H.ops)
    assert w.min() >= -1e-12 and w.max() <= 1 + 1e-12
    one = gen_field("general", 1, 3, 13)
    assert one.is_probability and one.weights[0] == 1
    with pytest.raises(BadBounds):
        gen_field("hermitian_bounded", 2, 2, 0, C=np.eye(2), D=np.zeros((2, 2)))
    with pytest.raises(ValueError):
        gen_field("bogus", 2, 2, 0)


def test_gen_field_deterministic():
    a = gen_field("hermitian_bounded", 3, 4, 99)
    b = gen_field("hermitian_bounded", 3, 4, 99)
    np.testing.assert_array_equal(a.ops, b.ops)
    np.testing.assert_array_equal(a.weights, b.weights)


@given(seeds, dims8, atoms)
def test_gen_field_sandwich(seed, n, k):
    rng = np.random.default_rng(seed)
    G = ginibre(rng, n)
    C = G + G.conj().T
    M = ginibre(rng, n)
    D = C + M @ M.conj().T
    F = gen_field("hermitian_bounded", k, n, rng, C=C, D=D)
    scale = max(1, op_norm(C), op_norm(D))
    assert np.linalg.eigvalsh(F.ops - C).min() >= -1e-10 * scale
    assert np.linalg.eigvalsh(D - F.ops).min() >= -1e-10 * scale
    assert np.all(np.abs(np.abs(np.linalg.eigvals(gen_field("commuting_normal_disk", k, n, rng).ops)) <= 0.9 + 1e-12))
