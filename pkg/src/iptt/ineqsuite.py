"""One evaluator per norm inequality or identity.

Every ``eval_*`` function checks the hypotheses of its statement first (a
violation raises, it is never scored), then returns a :class:`MarginResult`
with ``margin = rhs - lhs``.

Result kinds:

``bound``
    an inequality ``lhs <= rhs``; violated when the margin is below
    ``-tol * max(1, rhs)``.
``residual``
    a matrix identity; ``lhs`` is the relative residual between the two
    sides and ``rhs`` its tolerance, so a negative margin is a violation.
``agreement``
    two independent computations of one number; violated when
    ``|lhs - rhs| > tol * max(1, |lhs|)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import matcore as mc
from .errors import (
    BadExponents,
    DecompositionFailure,
    DimensionMismatch,
    HypothesisViolated,
    NotApplicable,
    NotProbability,
    SpectrumNotInDisk,
)
from .funcalc import HerglotzFn, herglotz_apply
from .transformer import (
    IptiTransformer,
    OperatorField,
    apply,
    apply_adjoint,
    deviation_moment,
    field_mean,
    field_variance,
    korkine_lhs,
    korkine_rhs,
    second_moment,
    variance_centered,
    variance_pairwise,
)
from .uinorms import HS, OP, UINorm

TOL_INEQ = 1e-9
SANDWICH_TOL = 1e-10
COMMUTE_TOL = 1e-10
SQRT2 = math.sqrt(2)


@dataclass(frozen=True)
class MarginResult:
    lhs: float
    rhs: float
    margin: float
    hypothesis_report: tuple[str, ...] = ()
    kind: str = "bound"
    tol: float = TOL_INEQ

    @classmethod
    def of(cls, lhs, rhs, report=(), kind="bound", tol=TOL_INEQ) -> MarginResult:
        lhs, rhs = float(lhs), float(rhs)
        return cls(lhs, rhs, rhs - lhs, tuple(report), kind, tol)

    @property
    def relative_margin(self) -> float:
        return self.margin / max(1.0, self.rhs)

    def violated(self, tol: float | None = None) -> bool:
        tol = self.tol if tol is None else tol
        if self.kind == "bound":
            return self.margin < -tol * max(1.0, self.rhs)
        if self.kind == "residual":
            return self.margin < 0
        return abs(self.margin) > tol * max(1.0, abs(self.lhs))


def tol_ineq(rhs: float, rel: float = TOL_INEQ) -> float:
    return rel * max(1.0, rhs)


# -- hypothesis helpers ---------------------------------------------------------


def _normal_disk(A, name: str, report: list) -> tuple[np.ndarray, float]:
    A = mc.as_cmatrix(A)
    spec = mc.normal_eig(A)
    r = float(np.max(np.abs(spec.eigenvalues)))
    if r >= 1 - mc.TOL_DISK:
        raise SpectrumNotInDisk(f"spectral radius of {name} is {r:.6g}")
    report.append(f"{name} normal, spectral radius {r:.4g}")
    return A, 1 - r


def _hermitian_interval(A, name: str, report: list) -> tuple[np.ndarray, float]:
    A = mc.as_cmatrix(A)
    if not mc.is_hermitian(A):
        raise HypothesisViolated(f"{name} is not Hermitian")
    w = np.linalg.eigvalsh((A + mc.adjoint(A)) / 2)
    r = float(np.max(np.abs(w)))
    if r >= 1 - mc.TOL_DISK:
        raise SpectrumNotInDisk(f"spectrum of {name} is not inside (-1, 1)")
    report.append(f"{name} Hermitian, spectrum in [{w.min():.4g}, {w.max():.4g}]")
    return A, 1 - r


def _probability(report: list, *fields: tuple[str, OperatorField]):
    for name, F in fields:
        if not F.is_probability:
            raise NotProbability(f"weights of {name} sum to {F.weights.sum()!r}")
    report.append("probability weights")


def _matched(F: OperatorField, G: OperatorField):
    if F.dim != G.dim or len(F) != len(G) or not np.array_equal(F.weights, G.weights):
        raise DimensionMismatch("fields must share weights and dimension")


def _sandwich(F: OperatorField, lo, hi, name: str, report: list):
    lo, hi = mc.as_cmatrix(lo), mc.as_cmatrix(hi)
    for bound_name, M in (("lower", lo), ("upper", hi)):
        if not mc.is_hermitian(M):
            raise HypothesisViolated(f"{bound_name} bound for {name} is not Hermitian")
    ops = F.ops
    defect = np.linalg.norm(ops - np.conj(np.swapaxes(ops, 1, 2)), axis=(1, 2))
    if np.any(defect > 1e-10 * np.maximum(np.linalg.norm(ops, axis=(1, 2)), mc.ABS_FLOOR)):
        raise HypothesisViolated(f"a member of {name} is not self-adjoint")
    herm = (ops + np.conj(np.swapaxes(ops, 1, 2))) / 2
    lo_gap = np.linalg.eigvalsh(herm - (lo + mc.adjoint(lo)) / 2).min()
    hi_gap = np.linalg.eigvalsh((hi + mc.adjoint(hi)) / 2 - herm).min()
    worst = float(min(lo_gap, hi_gap))
    if worst < -SANDWICH_TOL * max(1.0, mc.op_norm(hi - lo)):
        raise HypothesisViolated(f"{name} escapes its operator bounds (gap {worst:.3e})")
    report.append(f"{name} self-adjoint within bounds (min gap {worst:.3e})")


# -- scalar Gruss ---------------------------------------------------------------


def eval_gruss_scalar(f, g, C: float, D: float, E: float, F: float) -> MarginResult:
    """``|mean(fg) - mean(f) mean(g)| <= (D-C)(F-E)/4`` for step functions on a uniform grid."""
    f = np.asarray(f, dtype=float)
    g = np.asarray(g, dtype=float)
    if f.shape != g.shape or f.ndim != 1 or f.size == 0:
        raise DimensionMismatch("f and g must be equally long 1-d samples")
    slack = 1e-12 * max(1.0, abs(C), abs(D), abs(E), abs(F))
    if f.min() < C - slack or f.max() > D + slack:
        raise HypothesisViolated("f leaves [C, D]")
    if g.min() < E - slack or g.max() > F + slack:
        raise HypothesisViolated("g leaves [E, F]")
    lhs = abs(np.mean(f * g) - np.mean(f) * np.mean(g))
    rhs = 0.25 * (D - C) * (F - E)
    return MarginResult.of(lhs, rhs, [f"C<=f<=D, E<=g<=F on {f.size} cells"])


# -- Herglotz functional calculus bounds -------------------------------------------


def eval_p1(f: HerglotzFn, g: HerglotzFn, A, B, X, n: UINorm) -> MarginResult:
    """``|||f(A)Xg(B) + X||| <= 2 sqrt2 / (d_A d_B) ||| |AXB| + |X| |||``."""
    report = []
    A, dA = _normal_disk(A, "A", report)
    B, dB = _normal_disk(B, "B", report)
    X = mc.as_cmatrix(X)
    mc.check_same_dim(A, B, X)
    lhs = n(herglotz_apply(f, A) @ X @ herglotz_apply(g, B) + X)
    rhs = 2 * SQRT2 / (dA * dB) * n(mc.abs_op(A @ X @ B) + mc.abs_op(X))
    return MarginResult.of(lhs, rhs, report)


def eval_c1(f: HerglotzFn, g: HerglotzFn, A, X, n: UINorm) -> MarginResult:
    """``|||f(A)Xg(A*) + X||| <= 2/d_A^2 ||| A|X|A* + |X| |||`` for normal ``X`` commuting with ``A``."""
    report = []
    A, dA = _normal_disk(A, "A", report)
    X = mc.as_cmatrix(X)
    mc.check_same_dim(A, X)
    if not mc.is_normal(X):
        raise HypothesisViolated("X is not normal")
    scale = max(mc.op_norm(A) * mc.op_norm(X), mc.ABS_FLOOR)
    if mc.commutator_norm(A, X) > COMMUTE_TOL * scale:
        raise HypothesisViolated("X does not commute with A")
    report.append("X normal, commutes with A")
    Ah = mc.adjoint(A)
    absX = mc.abs_op(X)
    lhs = n(herglotz_apply(f, A) @ X @ herglotz_apply(g, Ah) + X)
    rhs = 2 / dA**2 * n(A @ absX @ Ah + absX)
    return MarginResult.of(lhs, rhs, report)


def eval_c2(f: HerglotzFn, g: HerglotzFn, A, X, n: UINorm, sign: int = -1) -> MarginResult:
    """``|||f(A)Xg(A) - X||| <= 2 sqrt2 / d_A^2 ||| |AX| + |XA| |||``.

    ``sign=+1`` scores the same right-hand side against ``f(A)Xg(A) + X``.
    """
    if sign not in (-1, 1):
        raise NotApplicable("sign must be -1 or +1")
    report = []
    A, dA = _normal_disk(A, "A", report)
    X = mc.as_cmatrix(X)
    mc.check_same_dim(A, X)
    report.append(f"sign {'+' if sign > 0 else '-'}")
    lhs = n(herglotz_apply(f, A) @ X @ herglotz_apply(g, A) + sign * X)
    rhs = 2 * SQRT2 / dA**2 * n(mc.abs_op(A @ X) + mc.abs_op(X @ A))
    return MarginResult.of(lhs, rhs, report)


def eval_c3(f: HerglotzFn, g: HerglotzFn, A, B, n: UINorm) -> MarginResult:
    """``|||f(A)g(B) + I||| <= 2 sqrt2 / (d_A d_B) ||| |AB| + I |||``, i.e. :func:`eval_p1` at ``X = I``."""
    A = mc.as_cmatrix(A)
    return eval_p1(f, g, A, B, np.eye(A.shape[0], dtype=complex), n)


def eval_hilb(f: HerglotzFn, g: HerglotzFn, A, B, X, sign: int | None = None) -> MarginResult:
    """Hilbert-Schmidt bound for ``f(A)X +- Xg(B)`` with Hermitian ``A, B``.

    ``lhs`` is the larger of the two signs unless ``sign`` picks one.
    """
    report = []
    A, dA = _hermitian_interval(A, "A", report)
    B, dB = _hermitian_interval(B, "B", report)
    X = mc.as_cmatrix(X)
    mc.check_same_dim(A, B, X)
    fA_X = herglotz_apply(f, A) @ X
    X_gB = X @ herglotz_apply(g, B)
    signs = (1, -1) if sign is None else (sign,)
    lhs = max(HS(fA_X + s * X_gB) for s in signs)
    rhs = HS((X + mc.abs_op(A) @ X) / dA + (X + X @ mc.abs_op(B)) / dB)
    return MarginResult.of(lhs, rhs, report)


# -- transformer inequalities --------------------------------------------------------


def eval_cs_uinorm(T: IptiTransformer, X, n: UINorm) -> MarginResult:
    """Cauchy-Schwarz: ``|||sum mu A X B||| <= ||| (sum mu A*A)^{1/2} X (sum mu B*B)^{1/2} |||``."""
    if not (T.left.is_commuting_normal and T.right.is_commuting_normal):
        raise HypothesisViolated("both fields must be flagged commuting normal")
    report = ["both fields commuting normal"]
    X = mc.as_cmatrix(X)
    lhs = n(apply(T, X))
    rhs = n(mc.psd_power(second_moment(T.left), 0.5) @ X @ mc.psd_power(second_moment(T.right), 0.5))
    return MarginResult.of(lhs, rhs, report)


def _cs_theta_parts(F: OperatorField, G: OperatorField, theta: float, n: UINorm):
    M = np.einsum("t,tji,tjk->ik", F.weights, np.conj(F.ops), G.ops)
    lhs = n(mc.psd_power(mc.abs_op(M), theta))
    a = n(mc.psd_power(second_moment(F), theta))
    b = n(mc.psd_power(second_moment(G), theta))
    return lhs, a, b


def eval_cs_theta(F: OperatorField, G: OperatorField, theta: float, n: UINorm) -> MarginResult:
    """``||| |sum mu A*B|^theta ||| <= ||| (sum mu A*A)^theta |||^{1/2} ||| (sum mu B*B)^theta |||^{1/2}``."""
    if not theta > 0:
        raise NotApplicable("theta must be positive")
    _matched(F, G)
    lhs, a, b = _cs_theta_parts(F, G, theta, n)
    return MarginResult.of(lhs, math.sqrt(a) * math.sqrt(b), [f"theta={theta:g}"])


def eval_landau_theta(F: OperatorField, G: OperatorField, theta: float, n: UINorm) -> MarginResult:
    """Landau-type bound in squared form.

    ``||| |sum mu A*B - mean(A)* mean(B)|^theta |||^2
    <= ||| Var(A)^theta ||| * ||| Var(B)^theta |||``, evaluated as the
    Cauchy-Schwarz bound for the centered fields.
    """
    if not theta > 0:
        raise NotApplicable("theta must be positive")
    _matched(F, G)
    report = []
    _probability(report, ("F", F), ("G", G))
    Fc = F.shifted(field_mean(F))
    Gc = G.shifted(field_mean(G))
    lhs, a, b = _cs_theta_parts(Fc, Gc, theta, n)
    report.append(f"theta={theta:g}")
    return MarginResult.of(lhs**2, a * b, report)


def eval_gruss_operator(F: OperatorField, G: OperatorField, C, D, E, F_bnd, X, n: UINorm) -> MarginResult:
    """Operator Gruss: ``||| korkine(X) ||| <= ||D-C|| ||F-E|| / 4 * |||X|||``."""
    _matched(F, G)
    report = []
    _probability(report, ("F", F), ("G", G))
    _sandwich(F, C, D, "F", report)
    _sandwich(G, E, F_bnd, "G", report)
    X = mc.as_cmatrix(X)
    T = IptiTransformer(F, G)
    lhs = n(korkine_lhs(T, X))
    width = mc.op_norm(mc.as_cmatrix(D) - mc.as_cmatrix(C)) * mc.op_norm(
        mc.as_cmatrix(F_bnd) - mc.as_cmatrix(E)
    )
    rhs = width / 4 * n(X)
    return MarginResult.of(lhs, rhs, report)


def eval_elementary_gruss(As, Bs, C, D, E, F, X, n: UINorm) -> MarginResult:
    """Gruss bound for ``(1/k) sum A_i X B_i - (1/k^2) sum A_i X sum B_i``."""
    As, Bs = list(As), list(Bs)
    if len(As) != len(Bs) or not As:
        raise DimensionMismatch("need equally many (nonzero) A_i and B_i")
    return eval_gruss_operator(OperatorField.uniform(As), OperatorField.uniform(Bs), C, D, E, F, X, n)


def check_exponents(p: float, q: float, r: float, tol: float = 1e-12):
    if min(p, q, r) < 1:
        raise BadExponents(f"p, q, r must be >= 1, got {(p, q, r)}")
    gap = 1 / p - 1 / (2 * q) - 1 / (2 * r)
    if abs(gap) > tol:
        raise BadExponents(f"1/p - 1/(2q) - 1/(2r) = {gap:.3e}")


def schatten_landau_factors(F: OperatorField, G: OperatorField, q: float, r: float):
    """Left and right factors of the Schatten-p Landau bound.

    With centered fields ``a_t = A_t - mean``, ``b_t = B_t - mean``::

        Y = (sum mu a_t a_t*)^{(q-1)/2},   L = (sum mu |Y a_t|^2)^{1/(2q)}
        Z = (sum mu b_t* b_t)^{(r-1)/2},   R = (sum mu |Z b_t*|^2)^{1/(2r)}
    """
    Fc = F.shifted(field_mean(F))
    Gc = G.shifted(field_mean(G))
    Y = mc.psd_power(second_moment(Fc.adjoint()), (q - 1) / 2)
    Z = mc.psd_power(second_moment(Gc), (r - 1) / 2)
    L = mc.psd_power(second_moment(Fc.left_multiplied(Y)), 1 / (2 * q))
    R = mc.psd_power(second_moment(Gc.adjoint().left_multiplied(Z)), 1 / (2 * r))
    return L, R


def eval_schatten_landau(F: OperatorField, G: OperatorField, p: float, q: float, r: float, X) -> MarginResult:
    """``||korkine(X)||_p <= ||L X R||_p`` with ``1/p = 1/(2q) + 1/(2r)``."""
    check_exponents(p, q, r)
    _matched(F, G)
    report = []
    _probability(report, ("F", F), ("G", G))
    report.append(f"p={p:g}, q={q:g}, r={r:g}")
    X = mc.as_cmatrix(X)
    sp = UINorm.schatten(p)
    lhs = sp(korkine_lhs(IptiTransformer(F, G), X))
    L, R = schatten_landau_factors(F, G, q, r)
    return MarginResult.of(lhs, sp(L @ X @ R), report)


def eval_mean_minimizer(F: OperatorField, B, theta: float, n: UINorm) -> MarginResult:
    """``||| (sum mu |A_t - mean|^2)^theta ||| <= ||| (sum mu |A_t - B|^2)^theta |||`` for any ``B``."""
    report = []
    _probability(report, ("F", F))
    lhs = n(mc.psd_power(variance_centered(F), theta))
    rhs = n(mc.psd_power(deviation_moment(F, B), theta))
    return MarginResult.of(lhs, rhs, report + [f"theta={theta:g}"])


# -- identities ----------------------------------------------------------------------


def _fro(M) -> float:
    return float(np.linalg.norm(M))


def relative_residual(L, R, *operands) -> float:
    """``||L - R||_F`` over the largest Frobenius norm among both sides and ``operands``."""
    scale = max([_fro(L), _fro(R)] + [_fro(M) for M in operands] + [mc.ABS_FLOOR])
    return _fro(L - R) / scale


def eval_korkine_identity(T: IptiTransformer, X, tol: float = 1e-10) -> MarginResult:
    X = mc.as_cmatrix(X)
    report = []
    _probability(report, ("left", T.left), ("right", T.right))
    L = korkine_lhs(T, X)
    R = korkine_rhs(T, X)
    res = relative_residual(L, R, apply(T, X), field_mean(T.left) @ X @ field_mean(T.right))
    return MarginResult.of(res, tol, report, kind="residual", tol=tol)


def variance_forms(F: OperatorField) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Moment form, pairwise form and centered form of the field variance."""
    return field_variance(F), variance_pairwise(F), variance_centered(F)


def eval_variance_identity(F: OperatorField, tol: float = 1e-10) -> MarginResult:
    report = []
    _probability(report, ("F", F))
    V1, V2, V3 = variance_forms(F)
    m = field_mean(F)
    ops = (second_moment(F), mc.adjoint(m) @ m)
    res = max(relative_residual(V1, V2, *ops), relative_residual(V1, V3, *ops),
              relative_residual(V2, V3, *ops))
    return MarginResult.of(res, tol, report, kind="residual", tol=tol)


def eval_covariance_identity(f: HerglotzFn, A, U, tol: float = 1e-9) -> MarginResult:
    """``f(U A U*) = U f(A) U*`` for normal ``A`` and unitary ``U``."""
    report = []
    A, _ = _normal_disk(A, "A", report)
    U = mc.as_cmatrix(U)
    if mc.op_norm(mc.adjoint(U) @ U - np.eye(U.shape[0])) > mc.TOL_UNITARY:
        raise HypothesisViolated("U is not unitary")
    report.append("U unitary")
    Uh = mc.adjoint(U)
    L = herglotz_apply(f, U @ A @ Uh)
    R = U @ herglotz_apply(f, A) @ Uh
    return MarginResult.of(relative_residual(L, R), tol, report, kind="residual", tol=tol)


def deviation_decomposition(F: OperatorField, B) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of ``sum mu|A_t - B|^2 = sum mu|A_t - mean|^2 + |mean - B|^2``."""
    m = field_mean(F)
    B = mc.as_cmatrix(B)
    lhs = deviation_moment(F, B)
    rhs = variance_centered(F) + mc.adjoint(m - B) @ (m - B)
    return lhs, rhs


# -- exact Hilbert-Schmidt norm of a transformer -------------------------------------


def hs_norm_kron(T: IptiTransformer) -> float:
    """Norm on the Hilbert-Schmidt class via ``vec(AXB) = (B^T kron A) vec(X)``."""
    K = sum(w * np.kron(B.T, A) for w, A, B in zip(T.weights, T.left.ops, T.right.ops))
    return mc.op_norm(K)


def hs_norm_power(T: IptiTransformer, block: int = 3, max_iter: int = 20000,
                  rtol: float = 1e-15, seed: int = 0) -> float:
    """Same norm by block power iteration on ``T*T``, using only the action of ``T``.

    Works entirely on matrices with the trace inner product; Rayleigh-Ritz
    on the block keeps convergence fast when the top singular values
    cluster.
    """
    n = T.dim
    rng = np.random.default_rng(seed)
    k = min(block, n * n)
    V = rng.standard_normal((n * n, k)) + 1j * rng.standard_normal((n * n, k))
    V, _ = np.linalg.qr(V)
    prev, stable = -1.0, 0
    for _ in range(max_iter):
        W = np.column_stack([
            apply_adjoint(T, apply(T, v.reshape(n, n))).ravel() for v in V.T
        ])
        H = mc.adjoint(V) @ W
        ritz = np.linalg.eigvalsh((H + mc.adjoint(H)) / 2)
        top = float(ritz[-1])
        if top <= mc.ABS_FLOOR:
            return 0.0
        if k == n * n:
            # the block spans the whole space, so Rayleigh-Ritz is exact
            return math.sqrt(top)
        if abs(top - prev) <= max(rtol, 8 * np.finfo(float).eps) * top:
            stable += 1
            if stable >= 5:
                return math.sqrt(top)
        else:
            stable = 0
        prev = top
        V, _ = np.linalg.qr(W)
    raise DecompositionFailure("power iteration did not converge")


def eval_hs_exact_norm(T: IptiTransformer, tol: float = 1e-8) -> MarginResult:
    lhs = hs_norm_kron(T)
    rhs = hs_norm_power(T)
    return MarginResult.of(lhs, rhs, ["Kronecker form vs power iteration"], kind="agreement", tol=tol)


# -- dispatch ------------------------------------------------------------------------


@dataclass(frozen=True)
class IneqInstance:
    id: str
    inputs: dict = field(default_factory=dict)
    norm: UINorm | None = None


@dataclass(frozen=True)
class Evaluator:
    fn: Callable[..., MarginResult]
    kind: str
    takes_norm: bool


EVALUATORS: dict[str, Evaluator] = {
    "gruss_scalar": Evaluator(eval_gruss_scalar, "bound", False),
    "p1": Evaluator(eval_p1, "bound", True),
    "c1": Evaluator(eval_c1, "bound", True),
    "c2": Evaluator(lambda **kw: eval_c2(sign=-1, **kw), "bound", True),
    "c2_plus": Evaluator(lambda **kw: eval_c2(sign=1, **kw), "bound", True),
    "c3": Evaluator(eval_c3, "bound", True),
    "hilb": Evaluator(eval_hilb, "bound", False),
    "cs_uinorm": Evaluator(eval_cs_uinorm, "bound", True),
    "cs_theta": Evaluator(eval_cs_theta, "bound", True),
    "landau_theta": Evaluator(eval_landau_theta, "bound", True),
    "gruss_operator": Evaluator(eval_gruss_operator, "bound", True),
    "elementary_gruss": Evaluator(eval_elementary_gruss, "bound", True),
    "schatten_landau": Evaluator(eval_schatten_landau, "bound", False),
    "mean_minimizer": Evaluator(eval_mean_minimizer, "bound", True),
    "hs_exact_norm": Evaluator(eval_hs_exact_norm, "agreement", False),
    "korkine": Evaluator(eval_korkine_identity, "residual", False),
    "variance": Evaluator(eval_variance_identity, "residual", False),
    "covariance": Evaluator(eval_covariance_identity, "residual", False),
}


def evaluate(inst: IneqInstance) -> MarginResult:
    try:
        ev = EVALUATORS[inst.id]
    except KeyError:
        raise NotApplicable(f"unknown inequality id {inst.id!r}") from None
    kwargs = dict(inst.inputs)
    if ev.takes_norm:
        kwargs["n"] = inst.norm if inst.norm is not None else OP
    return ev.fn(**kwargs)

