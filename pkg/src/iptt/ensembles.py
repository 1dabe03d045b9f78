"""Random matrix ensembles used by the generators and the test-suite."""

from __future__ import annotations

import numpy as np

from .matcore import adjoint


def as_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def ginibre(rng: np.random.Generator, n: int, m: int | None = None) -> np.ndarray:
    """Complex Gaussian matrix with unit-variance entries."""
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    # QR of a Ginibre matrix, with R's diagonal phases pushed into Q (Mezzadri)
    q, r = np.linalg.qr(ginibre(rng, n))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    G = ginibre(rng, n)
    return (G + adjoint(G)) / 2


def disk_points(rng: np.random.Generator, n: int, radius: float = 0.9) -> np.ndarray:
    """``n`` points uniform in the closed disk of the given radius."""
    r = radius * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def normal_from(U: np.ndarray, lam: np.ndarray) -> np.ndarray:
    return (U * lam) @ adjoint(U)


def random_normal_in_disk(rng: np.random.Generator, n: int, radius: float = 0.9) -> np.ndarray:
    return normal_from(haar_unitary(rng, n), disk_points(rng, n, radius))


def random_hermitian_in_interval(rng: np.random.Generator, n: int, bound: float = 0.9) -> np.ndarray:
    lam = rng.uniform(-bound, bound, n)
    return normal_from(haar_unitary(rng, n), lam)


def probability_weights(rng: np.random.Generator, k: int) -> np.ndarray:
    w = rng.dirichlet(np.ones(k))
    # Dirichlet draws can underflow to exactly zero for tiny k-simplex corners
    w = np.maximum(w, 1e-6)
    return w / w.sum()
