import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from iptt.ensembles import haar_unitary, random_hermitian_in_interval, random_normal_in_disk
from iptt.errors import NotApplicable, NotNormal, OutsideDisk, SpectrumNotInDisk
from iptt.funcalc import (
    HerglotzFn,
    herglotz_apply,
    herglotz_eval,
    herglotz_resolvent_form,
    random_herglotz,
    resolvent_norm_bound_check,
)
from iptt.matcore import adjoint, eigenvalues

from conftest import atoms, seeds

dims8 = st.integers(1, 8)


def contour_oracle(f, A, nodes=512):
    """Trapezoidal Cauchy integral of f(z)(z - A)^{-1} on |z| = (1 + max|lam|)/2."""
    n = A.shape[0]
    rho = (1 + np.max(np.abs(eigenvalues(A)))) / 2
    I = np.eye(n)
    out = np.zeros((n, n), complex)
    for z in rho * np.exp(2j * np.pi * np.arange(nodes) / nodes):
        # dz / (2 pi i) = z dphi / (2 pi)
        out += f(z) * z * np.linalg.inv(z * I - A)
    return out / nodes


def test_eval_examples():
    f = HerglotzFn([0.0], [1.0])
    assert f(0) == 1
    assert f(0.5) == pytest.approx(3)
    g = HerglotzFn.from_atoms([(0.0, 1), (np.pi, 1)])
    assert g(0.5) == pytest.approx(5 / 3)


def test_construction_errors():
    with pytest.raises(NotApplicable):
        HerglotzFn([0.0, 1.0], [0.5, 0.6])
    with pytest.raises(NotApplicable):
        HerglotzFn([0.0], [-1.0])
    with pytest.raises(NotApplicable):
        HerglotzFn([], [])
    with pytest.raises(OutsideDisk):
        herglotz_eval(HerglotzFn([0.0], [1.0]), 1.0)


@given(seeds, atoms)
def test_value_at_origin_and_positive_real_part(seed, k):
    rng = np.random.default_rng(seed)
    f = random_herglotz(rng, k)
    assert f(0) == pytest.approx(1, abs=1e-12)
    z = 0.95 * np.sqrt(rng.uniform(0, 1, 20)) * np.exp(2j * np.pi * rng.uniform(0, 1, 20))
    assert np.all(f(z).real > 0)


def test_apply_examples(rng):
    f = random_herglotz(rng, 3)
    np.testing.assert_allclose(herglotz_apply(f, np.zeros((3, 3))), np.eye(3), atol=1e-14)
    atom = HerglotzFn([0.0], [1.0])
    np.testing.assert_allclose(herglotz_apply(atom, np.diag([0.5, -0.5])), np.diag([3, 1 / 3]), atol=1e-13)
    with pytest.raises(NotNormal):
        herglotz_apply(f, [[0.0, 0.5], [0.0, 0.0]])
    with pytest.raises(SpectrumNotInDisk):
        herglotz_apply(f, np.diag([1.0, 0.0]))


@given(seeds, dims8, atoms)
def test_unitary_covariance(seed, n, k):
    rng = np.random.default_rng(seed)
    f = random_herglotz(rng, k)
    A = random_normal_in_disk(rng, n)
    U = haar_unitary(rng, n)
    lhs = herglotz_apply(f, U @ A @ adjoint(U))
    rhs = U @ herglotz_apply(f, A) @ adjoint(U)
    np.testing.assert_allclose(lhs, rhs, atol=1e-9 * max(1, np.abs(rhs).max()))


@given(seeds, dims8, atoms)
def test_spectral_mapping(seed, n, k):
    rng = np.random.default_rng(seed)
    f = random_herglotz(rng, k)
    A = random_normal_in_disk(rng, n)
    got = np.sort_complex(eigenvalues(herglotz_apply(f, A)))
    want = np.sort_complex(f(eigenvalues(A)))
    # sort_complex can pair differently under ties, so match greedily
    for w in want:
        i = np.argmin(np.abs(got - w))
        assert abs(got[i] - w) <= 1e-9 * max(1, abs(w))
        got = np.delete(got, i)


@given(seeds, dims8, atoms)
def test_resolvent_form_agrees(seed, n, k):
    rng = np.random.default_rng(seed)
    f = random_herglotz(rng, k)
    A = random_normal_in_disk(rng, n)
    np.testing.assert_allclose(herglotz_resolvent_form(f, A), herglotz_apply(f, A), atol=1e-9 * 20)


@given(seeds, dims8, atoms)
def test_contour_oracle(seed, n, k):
    rng = np.random.default_rng(seed)
    f = random_herglotz(rng, k)
    A = random_normal_in_disk(rng, n)
    np.testing.assert_allclose(contour_oracle(f, A), herglotz_apply(f, A), atol=1e-6)


@given(seeds, dims8, atoms)
def test_positivity_transfer_hermitian(seed, n, k):
    rng = np.random.default_rng(seed)
    f = random_herglotz(rng, k)
    H = random_hermitian_in_interval(rng, n)
    F = herglotz_apply(f, H)
    assert np.linalg.eigvalsh((F + adjoint(F)) / 2).min() >= -1e-10


def test_resolvent_bound_examples():
    assert resolvent_norm_bound_check(np.zeros((2, 2)), np.linspace(0, 6, 7))
    A = np.diag([0.5])
    assert resolvent_norm_bound_check(A, [0.0, np.pi])
    assert np.linalg.norm(np.linalg.inv(np.eye(1) - A), 2) == pytest.approx(2)
    assert np.linalg.norm(np.linalg.inv(-np.eye(1) - A), 2) == pytest.approx(1 / 1.5)


@given(seeds, dims8)
def test_resolvent_bound_random(seed, n):
    rng = np.random.default_rng(seed)
    assert resolvent_norm_bound_check(random_normal_in_disk(rng, n), rng.uniform(0, 2 * np.pi, 5))
