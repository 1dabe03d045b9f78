"""Unitarily invariant norms: operator, Schatten-p, Ky Fan-k, p-reconvexized.

Every norm here is a symmetric gauge function of the singular values, so
evaluation is a single SVD followed by :meth:`UINorm.gauge`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .ensembles import as_rng, ginibre, haar_unitary
from .errors import DimensionMismatch, NotApplicable
from .matcore import adjoint, as_cmatrix, singular_values

TOL_DOM = 1e-10

_KINDS = ("operator", "schatten", "kyfan", "reconvex")


@dataclass(frozen=True)
class UINorm:
    kind: str
    p: float | None = None
    k: int | None = None
    base: UINorm | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise NotApplicable(f"unknown norm kind {self.kind!r}")
        if self.kind == "schatten" and not (self.p is not None and self.p >= 1):
            raise NotApplicable("schatten norm needs p >= 1")
        if self.kind == "kyfan" and not (self.k is not None and self.k >= 1):
            raise NotApplicable("ky fan norm needs k >= 1")
        if self.kind == "reconvex":
            if self.base is None or self.p is None or self.p < 1:
                raise NotApplicable("reconvexized norm needs a base norm and p >= 1")

    @classmethod
    def operator(cls) -> UINorm:
        return cls("operator")

    @classmethod
    def schatten(cls, p: float) -> UINorm:
        return cls("schatten", p=float(p))

    @classmethod
    def kyfan(cls, k: int) -> UINorm:
        return cls("kyfan", k=int(k))

    @classmethod
    def reconvex(cls, base: UINorm, p: float) -> UINorm:
        return cls("reconvex", p=float(p), base=base)

    @classmethod
    def parse(cls, label: str) -> UINorm:
        """Parse a short label: ``op``, ``s1``, ``s1.5``, ``sinf``, ``kf2``, ``rc2:s1``."""
        label = label.strip()
        if label == "op":
            return cls.operator()
        if m := re.fullmatch(r"rc([0-9.]+):(.+)", label):
            return cls.reconvex(cls.parse(m.group(2)), float(m.group(1)))
        if m := re.fullmatch(r"kf([0-9]+)", label):
            return cls.kyfan(int(m.group(1)))
        if m := re.fullmatch(r"s(inf|[0-9.]+)", label):
            return cls.schatten(math.inf if m.group(1) == "inf" else float(m.group(1)))
        raise NotApplicable(f"cannot parse norm label {label!r}")

    @property
    def label(self) -> str:
        if self.kind == "operator":
            return "op"
        if self.kind == "schatten":
            return "sinf" if math.isinf(self.p) else f"s{self.p:g}"
        if self.kind == "kyfan":
            return f"kf{self.k}"
        return f"rc{self.p:g}:{self.base.label}"

    def gauge(self, s: np.ndarray) -> float:
        """Symmetric gauge function applied to a nonincreasing singular-value vector."""
        if s.size == 0:
            return 0.0
        if self.kind == "operator":
            return float(s[0])
        if self.kind == "schatten":
            if math.isinf(self.p):
                return float(s[0])
            top = s[0]
            if top == 0:
                return 0.0
            # rescale before the power to dodge overflow/underflow at large p
            return float(top * np.sum((s / top) ** self.p) ** (1 / self.p))
        if self.kind == "kyfan":
            return float(np.sum(s[: self.k]))
        # singular values of |A|^p are s^p, already nonincreasing
        return self.base.gauge(s**self.p) ** (1 / self.p)

    def __call__(self, A) -> float:
        return norm(self, A)


OP = UINorm.operator()
TRACE = UINorm.schatten(1)
HS = UINorm.schatten(2)


def norm(n: UINorm, A) -> float:
    return n.gauge(singular_values(A))


def kyfan_dual(n_k: int, A) -> float:
    """Dual of the Ky Fan k-norm: ``max(||A||, ||A||_1 / k)``."""
    s = singular_values(A)
    return max(float(s[0]), float(s.sum()) / n_k)


def dual_norm_operator_trace(A, which: str, samples: int = 64, seed=0) -> float:
    """Trace-pairing certificate for the operator/trace norm duality.

    ``which="op_from_trace"`` returns ``max |tr(AY)|`` over sampled ``Y`` with
    ``||Y||_1 = 1``; ``"trace_from_op"`` uses ``||Y|| = 1``. The analytic
    maximizer (top singular pair ``v w*``, resp. polar factor ``V W*``) is
    always among the candidates, so the result equals the corresponding norm
    up to round-off and never exceeds it otherwise.
    """
    if samples < 1:
        raise NotApplicable("samples must be >= 1")
    if which not in ("op_from_trace", "trace_from_op"):
        raise NotApplicable(f"unknown duality direction {which!r}")
    A = as_cmatrix(A)
    n = A.shape[0]
    rng = as_rng(seed)
    W, _, Vh = np.linalg.svd(A)
    V = adjoint(Vh)
    cands = []
    if which == "op_from_trace":
        cands.append(np.outer(V[:, 0], np.conj(W[:, 0])))
        for i in range(samples):
            if i % 2 == 0:
                u, v = ginibre(rng, n, 1)[:, 0], ginibre(rng, n, 1)[:, 0]
                Y = np.outer(u, np.conj(v))
            else:
                Y = ginibre(rng, n)
            cands.append(Y / max(TRACE(Y), 1e-300))
    else:
        cands.append(V @ adjoint(W))
        for i in range(samples):
            Y = haar_unitary(rng, n) if i % 2 == 0 else ginibre(rng, n)
            cands.append(Y / max(OP(Y), 1e-300))
    return max(abs(np.trace(A @ Y)) for Y in cands)


def kyfan_dominates(A, B) -> bool:
    """True iff every Ky Fan k-norm of ``A`` is at most that of ``B``."""
    A, B = as_cmatrix(A), as_cmatrix(B)
    if A.shape != B.shape:
        raise DimensionMismatch(f"{A.shape} vs {B.shape}")
    ca = np.cumsum(singular_values(A))
    cb = np.cumsum(singular_values(B))
    return bool(np.all(ca <= cb + TOL_DOM))
