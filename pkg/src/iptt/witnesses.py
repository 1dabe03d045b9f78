"""Equality cases: instances on which a bound is attained exactly."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .ensembles import ginibre, haar_unitary
from .funcalc import random_herglotz
from .ineqsuite import (
    MarginResult,
    eval_c1,
    eval_c2,
    eval_cs_theta,
    eval_cs_uinorm,
    eval_gruss_operator,
    eval_gruss_scalar,
    eval_landau_theta,
)
from .transformer import IptiTransformer, OperatorField
from .uinorms import OP, UINorm

SHARP_TOL = 1e-12


@dataclass(frozen=True)
class Witness:
    name: str
    ineq_id: str
    build: Callable[[], MarginResult]
    tol: float = SHARP_TOL

    def run(self) -> MarginResult:
        return self.build()

    def attained(self, res: MarginResult) -> bool:
        return abs(res.margin) <= self.tol * max(1.0, abs(res.rhs))


def step_witness(cells: int = 64) -> MarginResult:
    f = np.repeat([-1.0, 1.0], cells // 2)
    return eval_gruss_scalar(f, f, -1.0, 1.0, -1.0, 1.0)


def scalar_operator_witness(n: UINorm = OP) -> MarginResult:
    I = np.eye(1, dtype=complex)
    F = OperatorField([0.5, 0.5], [-I, I], is_self_adjoint=True)
    return eval_gruss_operator(F, F, -I, I, -I, I, I, n)


def landau_witness(n: UINorm = OP) -> MarginResult:
    F = OperatorField([0.5, 0.5], [-1.0, 1.0])
    return eval_landau_theta(F, F, 1.0, n)


def cs_equal_fields_witness(seed: int = 0, dim: int = 3, theta: float = 1.0, n: UINorm = OP) -> MarginResult:
    rng = np.random.default_rng(seed)
    F = OperatorField.uniform([ginibre(rng, dim) for _ in range(3)])
    return eval_cs_theta(F, F, theta, n)


def c1_zero_witness(seed: int = 0, dim: int = 3, n: UINorm = OP) -> MarginResult:
    rng = np.random.default_rng(seed)
    f, g = random_herglotz(rng, 3), random_herglotz(rng, 3)
    U = haar_unitary(rng, dim)
    X = (U * ginibre(rng, dim, 1)[:, 0]) @ U.conj().T
    return eval_c1(f, g, np.zeros((dim, dim)), X, n)


def c2_zero_witness(seed: int = 0, dim: int = 3, n: UINorm = OP) -> MarginResult:
    rng = np.random.default_rng(seed)
    f, g = random_herglotz(rng, 3), random_herglotz(rng, 3)
    return eval_c2(f, g, np.zeros((dim, dim)), ginibre(rng, dim), n)


def unitary_cs_witness(seed: int = 0, dim: int = 3, n: UINorm = OP) -> MarginResult:
    rng = np.random.default_rng(seed)
    left = OperatorField([1.0], [haar_unitary(rng, dim)], is_commuting_normal=True)
    right = OperatorField([1.0], [haar_unitary(rng, dim)], is_commuting_normal=True)
    return eval_cs_uinorm(IptiTransformer(left, right), ginibre(rng, dim), n)


WITNESSES = (
    Witness("gruss_scalar step function", "gruss_scalar", step_witness),
    Witness("1x1 operator Gruss, fields +-1", "gruss_operator", scalar_operator_witness),
    Witness("Landau, a = b = (-1, 1)", "landau_theta", landau_witness),
    Witness("Cauchy-Schwarz theta, F = G", "cs_theta", cs_equal_fields_witness, 1e-9),
    Witness("normal commuting bound at A = 0", "c1", c1_zero_witness, 1e-9),
    Witness("minus-sign corollary at A = 0", "c2", c2_zero_witness, 1e-9),
    Witness("Cauchy-Schwarz, single unitary atoms", "cs_uinorm", unitary_cs_witness, 1e-9),
)


def run_witnesses() -> list[tuple[Witness, MarginResult]]:
    return [(w, w.run()) for w in WITNESSES]
