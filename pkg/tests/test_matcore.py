import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from iptt.ensembles import ginibre, haar_unitary, normal_from, random_normal_in_disk
from iptt.errors import (
    DimensionMismatch,
    NotApplicable,
    NotNormal,
    NotPSD,
    SpectrumNotInDisk,
)
from iptt.matcore import (
    abs_op,
    adjoint,
    as_cmatrix,
    commutator_norm,
    dist_boundary_disk,
    eigenvalues,
    hermitian_eig,
    is_hermitian,
    is_normal,
    normal_eig,
    op_norm,
    psd_power,
    singular_values,
)

from conftest import dims, seeds


def test_as_cmatrix_scalar_and_shape():
    assert as_cmatrix(3.0).shape == (1, 1)
    with pytest.raises(DimensionMismatch):
        as_cmatrix(np.zeros((2, 3)))
    with pytest.raises(NotApplicable):
        as_cmatrix([[np.nan]])


def test_singular_values_diag():
    s = singular_values(np.diag([1.0, -3.0, 2.0]))
    np.testing.assert_allclose(s, [3, 2, 1])


def test_op_norm_rank_one():
    u, v = np.array([3.0, 4.0]), np.array([1.0, 0.0])
    assert op_norm(np.outer(u, v)) == pytest.approx(5.0)


def test_abs_op_of_unitary_is_identity(rng):
    U = haar_unitary(rng, 4)
    np.testing.assert_allclose(abs_op(U), np.eye(4), atol=1e-12)


@given(seeds, dims)
def test_abs_op_squares_to_gram(seed, n):
    A = ginibre(np.random.default_rng(seed), n)
    P = abs_op(A)
    np.testing.assert_allclose(P @ P, adjoint(A) @ A, atol=1e-10 * max(1, op_norm(A)) ** 2)
    assert np.linalg.eigvalsh(P).min() >= -1e-12


@given(seeds, dims)
def test_normal_eig_reconstructs(seed, n):
    rng = np.random.default_rng(seed)
    A = random_normal_in_disk(rng, n)
    spec = normal_eig(A)
    U = spec.eigenvectors
    np.testing.assert_allclose(adjoint(U) @ U, np.eye(n), atol=1e-9)
    np.testing.assert_allclose(spec.reconstruct(), A, atol=1e-9)


def test_normal_eig_repeated_eigenvalues(rng):
    U = haar_unitary(rng, 4)
    A = normal_from(U, np.array([0.5, 0.5, 0.5j, 0.5j]))
    spec = normal_eig(A)
    np.testing.assert_allclose(adjoint(spec.eigenvectors) @ spec.eigenvectors, np.eye(4), atol=1e-10)
    np.testing.assert_allclose(spec.reconstruct(), A, atol=1e-10)


def test_normal_eig_rejects_jordan_block():
    with pytest.raises(NotNormal):
        normal_eig([[0.0, 1.0], [0.0, 0.0]])


def test_eigenvalues_triangular():
    lam = np.sort_complex(eigenvalues([[1, 5], [0, 2]]))
    np.testing.assert_allclose(lam, [1, 2])


def test_hermitian_eig_and_flags(rng):
    H = ginibre(rng, 3)
    H = H + adjoint(H)
    assert is_hermitian(H)
    assert is_normal(H)
    spec = hermitian_eig(H)
    np.testing.assert_allclose(spec.reconstruct(), H, atol=1e-12)
    assert not is_hermitian(ginibre(rng, 3))


def test_dist_boundary_disk():
    assert dist_boundary_disk(np.diag([0.5, -0.2])) == pytest.approx(0.5)
    assert dist_boundary_disk(np.zeros((2, 2))) == 1.0
    with pytest.raises(SpectrumNotInDisk):
        dist_boundary_disk(np.diag([1.0, 0.0]))


def test_psd_power_examples(rng):
    P = np.diag([4.0, 9.0, 0.0])
    np.testing.assert_allclose(psd_power(P, 0.5), np.diag([2, 3, 0]), atol=1e-14)
    np.testing.assert_allclose(psd_power(P, 0), np.diag([1, 1, 0]), atol=1e-14)
    np.testing.assert_allclose(psd_power(P, 1), P, atol=1e-13)
    with pytest.raises(NotApplicable):
        psd_power(P, -1)
    with pytest.raises(NotPSD):
        psd_power(np.diag([1.0, -1.0]), 0.5)
    with pytest.raises(NotPSD):
        psd_power(ginibre(rng, 2), 1.0)


@given(seeds, dims)
def test_psd_power_semigroup(seed, n):
    G = ginibre(np.random.default_rng(seed), n)
    P = G @ adjoint(G)
    scale = op_norm(P)
    np.testing.assert_allclose(psd_power(P, 0.5) @ psd_power(P, 0.5), P, atol=1e-9 * scale)
    np.testing.assert_allclose(psd_power(psd_power(P, 2), 0.5), P, atol=1e-8 * scale)


def test_commutator_norm(rng):
    U = haar_unitary(rng, 3)
    A = normal_from(U, rng.standard_normal(3))
    B = normal_from(U, rng.standard_normal(3))
    assert commutator_norm(A, B) < 1e-12
    assert commutator_norm([[0, 1], [0, 0]], [[0, 0], [1, 0]]) == pytest.approx(1.0)


def test_adjoint_examples():
    np.testing.assert_array_equal(adjoint(np.eye(2)), np.eye(2))
    np.testing.assert_array_equal(adjoint([[0, 1], [0, 0]]), [[0, 0], [1, 0]])
    np.testing.assert_array_equal(adjoint([[1j, 0], [0, 0]]), [[-1j, 0], [0, 0]])


def test_singular_value_examples(rng):
    np.testing.assert_allclose(singular_values(np.diag([3.0, -2.0, 1.0])), [3, 2, 1])
    np.testing.assert_allclose(singular_values(haar_unitary(rng, 4)), np.ones(4), atol=1e-12)
    np.testing.assert_allclose(singular_values([[0, 2], [0, 0]]), [2, 0], atol=1e-15)


def test_normal_eig_examples(rng):
    spec = normal_eig(np.diag([0.5, 0.25j]))
    assert sorted(spec.eigenvalues, key=abs) == pytest.approx([0.25j, 0.5])
    lam = np.array([0.3, -0.1j, 0.7 + 0.1j])
    U = haar_unitary(rng, 3)
    got = normal_eig(normal_from(U, lam)).eigenvalues
    np.testing.assert_allclose(np.sort_complex(got), np.sort_complex(lam), atol=1e-10)
    w = hermitian_eig([[2, 1], [1, 2]]).eigenvalues.real
    np.testing.assert_allclose(np.sort(w), [1, 3])


def test_dist_boundary_examples():
    assert dist_boundary_disk(np.diag([0.5, 0.25j])) == pytest.approx(0.5)
    assert dist_boundary_disk(np.zeros((5, 5))) == 1.0
    assert dist_boundary_disk(np.diag([0.9, -0.9])) == pytest.approx(0.1)


def test_abs_op_examples():
    np.testing.assert_allclose(abs_op(np.diag([-2.0, 3.0])), np.diag([2, 3]), atol=1e-14)
    np.testing.assert_allclose(abs_op([[0, 2], [0, 0]]), np.diag([0, 2]), atol=1e-14)


@given(seeds, st.integers(1, 16))
def test_singular_values_adjoint_invariant(seed, n):
    A = ginibre(np.random.default_rng(seed), n)
    np.testing.assert_allclose(singular_values(A), singular_values(adjoint(A)), atol=1e-10 * max(1, op_norm(A)))


@given(seeds, dims)
def test_spectrum_unitary_conjugation(seed, n):
    rng = np.random.default_rng(seed)
    A = random_normal_in_disk(rng, n)
    U = haar_unitary(rng, n)
    a = np.sort_complex(normal_eig(A).eigenvalues)
    b = np.sort_complex(normal_eig(U @ A @ adjoint(U)).eigenvalues)
    np.testing.assert_allclose(a, b, atol=1e-10)


@given(seeds, dims)
def test_op_norm_dominates_sampled_vectors(seed, n):
    rng = np.random.default_rng(seed)
    A = ginibre(rng, n)
    v = ginibre(rng, n, 100)
    v /= np.linalg.norm(v, axis=0)
    assert np.linalg.norm(A @ v, axis=0).max() <= op_norm(A) * (1 + 1e-12)
