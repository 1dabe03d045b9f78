"""Dense complex matrix primitives.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; nothing here
mutates its inputs. Decompositions are LAPACK-backed (``numpy.linalg`` and
``scipy.linalg.schur``) and any convergence failure is re-raised as
:class:`~iptt.errors.DecompositionFailure`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    DecompositionFailure,
    DimensionMismatch,
    NotApplicable,
    NotNormal,
    NotPSD,
    SpectrumNotInDisk,
)

TOL_UNITARY = 1e-9
TOL_RECON = 1e-9
TOL_DISK = 1e-12
ABS_FLOOR = 1e-14
# eigenvalues of a PSD matrix below this fraction of its norm are round-off
ZERO_FLOOR = 64 * np.finfo(float).eps


def as_cmatrix(A) -> np.ndarray:
    """Coerce to a square, finite complex128 array (scalars become 1x1)."""
    M = np.asarray(A, dtype=complex)
    if M.ndim == 0:
        M = M.reshape(1, 1)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise DimensionMismatch(f"expected a nonempty square matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NotApplicable("matrix has non-finite entries")
    return M


def check_same_dim(*mats: np.ndarray) -> int:
    dims = {m.shape for m in mats}
    if len(dims) != 1:
        raise DimensionMismatch(f"incompatible shapes {sorted(dims)}")
    return mats[0].shape[0]


def adjoint(A) -> np.ndarray:
    return np.conj(np.asarray(A, dtype=complex)).T


def singular_values(A) -> np.ndarray:
    """Singular values of ``A`` in nonincreasing order."""
    A = as_cmatrix(A)
    try:
        return np.linalg.svd(A, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise DecompositionFailure(str(exc)) from exc


def op_norm(A) -> float:
    return float(singular_values(A)[0])


def eigenvalues(A) -> np.ndarray:
    """Eigenvalues of a general square matrix (Hessenberg QR, no vectors)."""
    A = as_cmatrix(A)
    try:
        return np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise DecompositionFailure(str(exc)) from exc


def normality_defect(A) -> float:
    """``||A*A - AA*||_op / ||A||_op^2``, zero for normal matrices."""
    A = as_cmatrix(A)
    scale = max(op_norm(A) ** 2, ABS_FLOOR)
    Ah = adjoint(A)
    return op_norm(Ah @ A - A @ Ah) / scale


def is_normal(A, tol: float = TOL_RECON) -> bool:
    return normality_defect(A) <= tol


def hermitian_defect(A) -> float:
    """``||A - A*||_F / ||A||_F`` (zero for Hermitian ``A``)."""
    A = np.asarray(A, dtype=complex)
    return float(np.linalg.norm(A - adjoint(A)) / max(np.linalg.norm(A), ABS_FLOOR))


def is_hermitian(A, tol: float = 1e-10) -> bool:
    return hermitian_defect(A) <= tol


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues, plus a unitary eigenvector matrix when the source was normal."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None

    def reconstruct(self) -> np.ndarray:
        if self.eigenvectors is None:
            raise NotApplicable("spectrum carries no eigenvectors")
        U = self.eigenvectors
        return (U * self.eigenvalues) @ adjoint(U)


def normal_eig(A, tol: float = TOL_RECON) -> Spectrum:
    """Unitary diagonalization ``A = U diag(lam) U*`` of a normal matrix.

    Uses the complex Schur form, whose triangular factor is diagonal exactly
    when ``A`` is normal; the Schur vectors are unitary even for repeated
    eigenvalues, which ``eig`` does not guarantee.
    """
    A = as_cmatrix(A)
    defect = normality_defect(A)
    if defect > tol:
        raise NotNormal(f"||A*A - AA*|| / ||A||^2 = {defect:.3e} exceeds {tol:.1e}")
    try:
        T, Z = scipy.linalg.schur(A, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise DecompositionFailure(str(exc)) from exc
    return Spectrum(np.diag(T).copy(), Z)


def hermitian_eig(A) -> Spectrum:
    A = as_cmatrix(A)
    try:
        w, U = np.linalg.eigh((A + adjoint(A)) / 2)
    except np.linalg.LinAlgError as exc:
        raise DecompositionFailure(str(exc)) from exc
    return Spectrum(w.astype(complex), U)


def dist_boundary_disk(A, tol: float = TOL_DISK) -> float:
    """``d_A``: distance from the unit circle to the spectrum of ``A``."""
    lam = np.abs(eigenvalues(A))
    if lam.max() >= 1 - tol:
        raise SpectrumNotInDisk(f"spectral radius {lam.max():.6g} is not below 1")
    return float(1 - lam.max())


def abs_op(A) -> np.ndarray:
    """``|A| = (A*A)^{1/2}``, built from the SVD ``A = W S V*`` as ``V S V*``."""
    A = as_cmatrix(A)
    try:
        _, s, Vh = np.linalg.svd(A)
    except np.linalg.LinAlgError as exc:
        raise DecompositionFailure(str(exc)) from exc
    V = adjoint(Vh)
    P = (V * s) @ Vh
    return (P + adjoint(P)) / 2


def psd_power(P, s: float, tol: float = TOL_RECON) -> np.ndarray:
    """Fractional power of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-tol*||P||, 0)`` are clipped to zero; eigenvalues under
    the round-off floor are treated as exactly zero, so ``s = 0`` yields the
    projection onto the support of ``P``.
    """
    if s < 0:
        raise NotApplicable(f"negative power {s} is not defined on singular PSD matrices")
    P = as_cmatrix(P)
    scale = max(float(np.linalg.norm(P)), ABS_FLOOR)
    if np.linalg.norm(P - adjoint(P)) > tol * scale:
        raise NotPSD("matrix is not Hermitian")
    spec = hermitian_eig(P)
    w = spec.eigenvalues.real
    top = max(float(np.max(np.abs(w))), ABS_FLOOR)
    if w.min() < -tol * top:
        raise NotPSD(f"eigenvalue {w.min():.3e} below -tol*||P|| = {-tol * top:.3e}")
    w = np.where(w <= ZERO_FLOOR * top, 0.0, w)
    if s == 0:
        ws = (w > 0).astype(float)
    else:
        ws = w**s
    U = spec.eigenvectors
    out = (U * ws) @ adjoint(U)
    return (out + adjoint(out)) / 2


def commutator_norm(A, B) -> float:
    A, B = as_cmatrix(A), as_cmatrix(B)
    return op_norm(A @ B - B @ A)
