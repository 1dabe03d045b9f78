"""Herglotz-class functions on the unit disk and their normal-matrix calculus.

A member of the class (analytic on the disk, positive real part, value 1 at
the origin) is stored through its representing probability measure on the
circle, restricted to finitely many atoms::

    f(z) = sum_j w_j (e^{i a_j} + z) / (e^{i a_j} - z),   sum_j w_j = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ensembles import as_rng, probability_weights
from .errors import NotApplicable, OutsideDisk, SpectrumNotInDisk
from .matcore import (
    TOL_DISK,
    adjoint,
    as_cmatrix,
    normal_eig,
    op_norm,
)

TWO_PI = 2 * np.pi


@dataclass(frozen=True, eq=False)
class HerglotzFn:
    angles: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        a = np.atleast_1d(np.asarray(self.angles, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if a.shape != w.shape or a.size == 0:
            raise NotApplicable("need equally many angles and weights (at least one)")
        if np.any(w <= 0):
            raise NotApplicable("atom weights must be positive")
        if abs(w.sum() - 1) > 1e-12:
            raise NotApplicable(f"weights sum to {w.sum()!r}, not 1")
        object.__setattr__(self, "angles", np.mod(a, TWO_PI))
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_atoms(cls, atoms) -> HerglotzFn:
        """Build from ``[(angle, weight), ...]``; weights are normalized."""
        a, w = zip(*atoms)
        w = np.asarray(w, dtype=float)
        return cls(np.asarray(a, dtype=float), w / w.sum())

    @property
    def nodes(self) -> np.ndarray:
        return np.exp(1j * self.angles)

    def __call__(self, z):
        return herglotz_eval(self, z)


def random_herglotz(seed, n_atoms: int) -> HerglotzFn:
    rng = as_rng(seed)
    return HerglotzFn(rng.uniform(0, TWO_PI, n_atoms), probability_weights(rng, n_atoms))


def herglotz_eval(f: HerglotzFn, z) -> complex | np.ndarray:
    z_arr = np.asarray(z, dtype=complex)
    if np.any(np.abs(z_arr) >= 1 - TOL_DISK):
        raise OutsideDisk(f"|z| = {np.max(np.abs(z_arr)):.6g} is not inside the unit disk")
    e = f.nodes
    vals = np.sum(f.weights * (e + z_arr[..., None]) / (e - z_arr[..., None]), axis=-1)
    return complex(vals) if np.ndim(z) == 0 else vals


def _disk_spectrum(A):
    spec = normal_eig(A)
    if np.max(np.abs(spec.eigenvalues)) >= 1 - TOL_DISK:
        raise SpectrumNotInDisk(
            f"spectral radius {np.max(np.abs(spec.eigenvalues)):.6g} is not below 1"
        )
    return spec


def herglotz_apply(f: HerglotzFn, A) -> np.ndarray:
    """``f(A)`` for normal ``A`` with spectrum in the open unit disk."""
    spec = _disk_spectrum(as_cmatrix(A))
    U = spec.eigenvectors
    return (U * herglotz_eval(f, spec.eigenvalues)) @ adjoint(U)


def herglotz_resolvent_form(f: HerglotzFn, A) -> np.ndarray:
    """``sum_j w_j (e^{i a_j} - A)^{-1} (e^{i a_j} + A)``, no eigendecomposition."""
    A = as_cmatrix(A)
    I = np.eye(A.shape[0])
    out = np.zeros_like(A)
    for e, w in zip(f.nodes, f.weights):
        out += w * np.linalg.solve(e * I - A, e * I + A)
    return out


def resolvent_norm_bound_check(A, angles, tol: float = 1e-9) -> bool:
    """Check ``||(e^{ia} - A)^{-1}|| = 1/dist(e^{ia}, sigma(A)) <= 1/d_A`` at each angle.

    For normal ``A`` the equality is the growth condition; both it (relative
    ``tol``) and the bound by the boundary distance must hold.
    """
    A = as_cmatrix(A)
    lam = _disk_spectrum(A).eigenvalues
    d_A = 1 - np.max(np.abs(lam))
    I = np.eye(A.shape[0])
    for a in np.atleast_1d(angles):
        e = np.exp(1j * a)
        rnorm = op_norm(np.linalg.inv(e * I - A))
        exact = 1 / np.min(np.abs(e - lam))
        if abs(rnorm - exact) > tol * exact:
            return False
        if rnorm > (1 / d_A) * (1 + tol):
            return False
    return True
