"""Discrete inner product type integral transformers.

The parameter space is a finite set and the measure a positive weight
vector, so a field ``(A_t)`` is a stack of matrices with weights ``mu_t`` and
the transformer acts as ``X -> sum_t mu_t A_t X B_t``. With counting measure
this is an elementary operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .ensembles import (
    as_rng,
    disk_points,
    ginibre,
    haar_unitary,
    normal_from,
    probability_weights,
)
from .errors import BadBounds, DimensionMismatch, HypothesisViolated, NotProbability
from .matcore import ABS_FLOOR, adjoint, as_cmatrix, op_norm, psd_power

FLAG_TOL = 1e-10
PROB_TOL = 1e-12


def _h(S: np.ndarray) -> np.ndarray:
    """Batched adjoint over the leading axis."""
    return np.conj(np.swapaxes(S, -1, -2))


@dataclass(frozen=True, eq=False)
class OperatorField:
    """Finite weighted family ``{(mu_t, A_t)}``.

    Setting ``is_commuting_normal`` or ``is_self_adjoint`` asserts the
    property; it is verified on construction and a false claim raises
    :class:`HypothesisViolated`.
    """

    weights: np.ndarray
    ops: np.ndarray
    is_commuting_normal: bool = False
    is_self_adjoint: bool = False

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        ops = np.asarray(self.ops, dtype=complex)
        if ops.ndim == 1:
            ops = ops[:, None, None]
        elif ops.ndim == 2:
            ops = ops[None]
        if ops.ndim != 3 or ops.shape[1] != ops.shape[2]:
            raise DimensionMismatch(f"ops must stack square matrices, got shape {ops.shape}")
        if w.ndim != 1 or w.size != ops.shape[0] or w.size == 0:
            raise DimensionMismatch("weights and ops need equal nonzero length")
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise HypothesisViolated("weights must be positive and finite")
        if not np.all(np.isfinite(ops)):
            raise HypothesisViolated("field has non-finite entries")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "ops", ops)
        if self.is_self_adjoint:
            for A in ops:
                if op_norm(A - adjoint(A)) > FLAG_TOL * max(1.0, op_norm(A)):
                    raise HypothesisViolated("field flagged self-adjoint has a non-Hermitian member")
        if self.is_commuting_normal:
            scale = max(1.0, max(op_norm(A) for A in ops)) ** 2
            for A in ops:
                if op_norm(A @ adjoint(A) - adjoint(A) @ A) > FLAG_TOL * scale:
                    raise HypothesisViolated("field flagged commuting normal has a non-normal member")
            for A, B in combinations(ops, 2):
                if op_norm(A @ B - B @ A) > FLAG_TOL * scale:
                    raise HypothesisViolated("field flagged commuting normal has non-commuting members")

    @classmethod
    def uniform(cls, ops, **flags) -> OperatorField:
        ops = list(ops)
        return cls(np.full(len(ops), 1 / len(ops)), ops, **flags)

    @property
    def dim(self) -> int:
        return self.ops.shape[1]

    def __len__(self) -> int:
        return self.ops.shape[0]

    @property
    def is_probability(self) -> bool:
        return abs(self.weights.sum() - 1) <= PROB_TOL

    def adjoint(self) -> OperatorField:
        return OperatorField(self.weights, _h(self.ops), self.is_commuting_normal, self.is_self_adjoint)

    def shifted(self, B) -> OperatorField:
        """The field ``(A_t - B)``."""
        return OperatorField(self.weights, self.ops - as_cmatrix(B))

    def left_multiplied(self, Y) -> OperatorField:
        return OperatorField(self.weights, as_cmatrix(Y) @ self.ops)


def _require_probability(*fields: OperatorField):
    for F in fields:
        if not F.is_probability:
            raise NotProbability(f"weights sum to {F.weights.sum()!r}, not 1")


@dataclass(frozen=True, eq=False)
class IptiTransformer:
    left: OperatorField
    right: OperatorField

    def __post_init__(self):
        if len(self.left) != len(self.right) or not np.array_equal(
            self.left.weights, self.right.weights
        ):
            raise DimensionMismatch("left and right fields must share their weights")
        if self.left.dim != self.right.dim:
            raise DimensionMismatch("left and right fields act on different dimensions")

    @classmethod
    def from_lists(cls, weights, As, Bs) -> IptiTransformer:
        return cls(OperatorField(weights, As), OperatorField(weights, Bs))

    @property
    def weights(self) -> np.ndarray:
        return self.left.weights

    @property
    def dim(self) -> int:
        return self.left.dim

    def __call__(self, X) -> np.ndarray:
        return apply(self, X)


def apply(T: IptiTransformer, X) -> np.ndarray:
    X = as_cmatrix(X)
    if X.shape[0] != T.dim:
        raise DimensionMismatch(f"X is {X.shape}, transformer acts on dim {T.dim}")
    return np.einsum("t,tij,jk,tkl->il", T.weights, T.left.ops, X, T.right.ops)


def apply_adjoint(T: IptiTransformer, Y) -> np.ndarray:
    """Hilbert-Schmidt adjoint ``Y -> sum_t mu_t A_t* Y B_t*``."""
    Y = as_cmatrix(Y)
    return np.einsum("t,tij,jk,tkl->il", T.weights, _h(T.left.ops), Y, _h(T.right.ops))


def field_mean(F: OperatorField) -> np.ndarray:
    return np.einsum("t,tij->ij", F.weights, F.ops)


def second_moment(F: OperatorField) -> np.ndarray:
    """``sum_t mu_t A_t* A_t``."""
    M = np.einsum("t,tji,tjk->ik", F.weights, np.conj(F.ops), F.ops)
    return (M + adjoint(M)) / 2


def deviation_moment(F: OperatorField, B) -> np.ndarray:
    """``sum_t mu_t |A_t - B|^2`` for a fixed operator ``B``."""
    return second_moment(F.shifted(B))


def field_variance(F: OperatorField) -> np.ndarray:
    """``sum mu_t A_t* A_t - (sum mu_t A_t)* (sum mu_t A_t)``; PSD for probability weights."""
    _require_probability(F)
    m = field_mean(F)
    V = second_moment(F) - adjoint(m) @ m
    return (V + adjoint(V)) / 2


def variance_pairwise(F: OperatorField) -> np.ndarray:
    """``1/2 sum_{s,t} mu_s mu_t |A_s - A_t|^2``."""
    _require_probability(F)
    D = F.ops[:, None] - F.ops[None, :]
    ww = np.outer(F.weights, F.weights)
    V = 0.5 * np.einsum("st,stji,stjk->ik", ww, np.conj(D), D)
    return (V + adjoint(V)) / 2


def variance_centered(F: OperatorField) -> np.ndarray:
    """``sum_t mu_t |A_t - mean|^2``."""
    _require_probability(F)
    return deviation_moment(F, field_mean(F))


def korkine_lhs(T: IptiTransformer, X) -> np.ndarray:
    """``sum mu A_t X B_t - mean(A) X mean(B)``."""
    _require_probability(T.left, T.right)
    X = as_cmatrix(X)
    return apply(T, X) - field_mean(T.left) @ X @ field_mean(T.right)


def korkine_rhs(T: IptiTransformer, X) -> np.ndarray:
    """Pairwise form ``1/2 sum_{s,t} mu_s mu_t (A_s - A_t) X (B_s - B_t)``."""
    _require_probability(T.left, T.right)
    X = as_cmatrix(X)
    if X.shape[0] != T.dim:
        raise DimensionMismatch(f"X is {X.shape}, transformer acts on dim {T.dim}")
    DA = T.left.ops[:, None] - T.left.ops[None, :]
    DB = T.right.ops[:, None] - T.right.ops[None, :]
    ww = np.outer(T.weights, T.weights)
    return 0.5 * np.einsum("st,stij,jk,stkl->il", ww, DA, X, DB)


def _max_dev(ops: np.ndarray, C: np.ndarray) -> float:
    return max(op_norm(A - C) for A in ops)


def diameter_infinity(F: OperatorField) -> float:
    if len(F) == 1:
        return 0.0
    return max(op_norm(A - B) for A, B in combinations(F.ops, 2))


def radius_infinity(F: OperatorField, sweeps: int = 40) -> float:
    """Smallest ``max_t ||A_t - C||`` over centers ``C`` (upper estimate).

    Candidates are the mean, all pairwise midpoints and the members
    themselves; the best one is refined by coordinate descent over the real
    and imaginary parts of each entry. Including the members keeps the
    result at most the diameter; at least half the diameter holds for any
    center.
    """
    ops = F.ops
    cands = [field_mean(F)] + list(ops)
    cands += [(A + B) / 2 for A, B in combinations(ops, 2)]
    best_C = min(cands, key=lambda C: _max_dev(ops, C))
    best = _max_dev(ops, best_C)
    if best <= ABS_FLOOR:
        return 0.0
    n = F.dim
    step = best / 2
    for _ in range(sweeps):
        improved = False
        for i in range(n):
            for j in range(n):
                for unit in (1.0, 1j):
                    for sign in (1.0, -1.0):
                        C = best_C.copy()
                        C[i, j] += sign * unit * step
                        val = _max_dev(ops, C)
                        if val < best:
                            best, best_C, improved = val, C, True
        if not improved:
            step /= 2
            if step < 1e-9 * best:
                break
    return best


def gen_field(kind: str, n_atoms: int, dim: int, seed=None, C=None, D=None,
              radius: float = 0.9, basis=None) -> OperatorField:
    """Random probability field with a structural property built in.

    ``commuting_normal_disk``
        shared Haar eigenbasis (or ``basis``), eigenvalues uniform in the
        disk of ``radius``.
    ``hermitian_bounded``
        ``A_t = C + (D-C)^{1/2} S_t (D-C)^{1/2}`` with ``0 <= S_t <= I``, so
        ``C <= A_t <= D`` holds by construction. Defaults ``C = 0, D = I``.
    ``general``
        independent Ginibre matrices.
    """
    rng = as_rng(seed)
    w = probability_weights(rng, n_atoms)
    if kind == "commuting_normal_disk":
        U = haar_unitary(rng, dim) if basis is None else as_cmatrix(basis)
        ops = [normal_from(U, disk_points(rng, dim, radius)) for _ in range(n_atoms)]
        return OperatorField(w, ops, is_commuting_normal=True)
    if kind == "hermitian_bounded":
        C = np.zeros((dim, dim), complex) if C is None else as_cmatrix(C)
        D = np.eye(dim, dtype=complex) if D is None else as_cmatrix(D)
        gap = D - C
        if op_norm(gap - adjoint(gap)) > FLAG_TOL * max(1.0, op_norm(gap)):
            raise BadBounds("D - C is not Hermitian")
        if np.linalg.eigvalsh((gap + adjoint(gap)) / 2).min() < -FLAG_TOL * max(1.0, op_norm(gap)):
            raise BadBounds("D - C is not positive semidefinite")
        R = psd_power(gap, 0.5)
        ops = []
        for _ in range(n_atoms):
            S = normal_from(haar_unitary(rng, dim), rng.random(dim))
            A = C + R @ S @ R
            ops.append((A + adjoint(A)) / 2)
        return OperatorField(w, ops, is_self_adjoint=True)
    if kind == "general":
        return OperatorField(w, [ginibre(rng, dim) for _ in range(n_atoms)])
    raise ValueError(f"unknown field kind {kind!r}")
