"""Hypothesis-respecting random instances, one generator per evaluator id.

Each generator takes the trial's private RNG plus the sweep coordinates and
returns ``(inputs, params)``: keyword arguments for the evaluator and a small
JSON-able record of how the instance was drawn. A few trials in every batch
are structured families (zero operators, equality witnesses) chosen by
``trial % 10 == 0`` or similar, so sharp cases show up in ordinary sweeps.
"""

from __future__ import annotations

import numpy as np

from .ensembles import (
    disk_points,
    ginibre,
    haar_unitary,
    normal_from,
    random_hermitian,
    random_hermitian_in_interval,
    random_normal_in_disk,
)
from .funcalc import random_herglotz
from .matcore import adjoint
from .transformer import IptiTransformer, OperatorField, field_mean, gen_field

MAX_HERGLOTZ_ATOMS = 5


def _herglotz_pair(rng, n_atoms):
    k = min(n_atoms, MAX_HERGLOTZ_ATOMS)
    return random_herglotz(rng, k), random_herglotz(rng, k)


def _zero(dim):
    return np.zeros((dim, dim), dtype=complex)


def gen_gruss_scalar(rng, dim, n_atoms, trial, **_):
    cells = 16 * dim
    family = {0: "constant", 1: "step_witness", 2: "ramp"}.get(trial % 8, "random")
    if family == "constant":
        c = rng.uniform(-1, 1)
        f = g = np.full(cells, c)
        C, D, E, F = c - 1, c + 1, c - 1, c + 1
    elif family == "step_witness":
        f = g = np.repeat([-1.0, 1.0], cells // 2)
        C, D, E, F = -1.0, 1.0, -1.0, 1.0
    elif family == "ramp":
        f = g = (np.arange(cells) + 0.5) / cells
        C, D, E, F = 0.0, 1.0, 0.0, 1.0
    else:
        C, E = rng.uniform(-2, 0, 2)
        D, F = C + rng.uniform(0.1, 2), E + rng.uniform(0.1, 2)
        f = rng.uniform(C, D, cells)
        g = rng.uniform(E, F, cells)
    return dict(f=f, g=g, C=C, D=D, E=E, F=F), {"family": family, "cells": cells}


def gen_p1(rng, dim, n_atoms, trial, **_):
    f, g = _herglotz_pair(rng, n_atoms)
    X = ginibre(rng, dim)
    if trial % 10 == 0:
        A = B = _zero(dim)
        family = "zero_operators"
    else:
        A = random_normal_in_disk(rng, dim)
        B = random_normal_in_disk(rng, dim)
        family = "random"
    return dict(f=f, g=g, A=A, B=B, X=X), {"family": family, "atoms": len(f.weights)}


def gen_c1(rng, dim, n_atoms, trial, **_):
    f, g = _herglotz_pair(rng, n_atoms)
    U = haar_unitary(rng, dim)
    X = normal_from(U, ginibre(rng, dim, 1)[:, 0])
    if trial % 10 == 0:
        A = _zero(dim)
        family = "zero_operator"
    else:
        A = normal_from(U, disk_points(rng, dim))
        family = "simultaneously_diagonal"
    return dict(f=f, g=g, A=A, X=X), {"family": family, "atoms": len(f.weights)}


def gen_c2(rng, dim, n_atoms, trial, **_):
    f, g = _herglotz_pair(rng, n_atoms)
    X = ginibre(rng, dim)
    if trial % 10 == 0:
        A, family = _zero(dim), "zero_operator"
    else:
        A, family = random_normal_in_disk(rng, dim), "random"
    return dict(f=f, g=g, A=A, X=X), {"family": family, "atoms": len(f.weights)}


def gen_c3(rng, dim, n_atoms, trial, **_):
    inputs, params = gen_p1(rng, dim, n_atoms, trial)
    del inputs["X"]
    return inputs, params


def gen_hilb(rng, dim, n_atoms, trial, **_):
    f, g = _herglotz_pair(rng, n_atoms)
    X = ginibre(rng, dim)
    if trial % 10 == 0:
        A = B = _zero(dim)
        family = "zero_operators"
    else:
        A = random_hermitian_in_interval(rng, dim)
        B = random_hermitian_in_interval(rng, dim)
        family = "random"
    return dict(f=f, g=g, A=A, B=B, X=X), {"family": family, "atoms": len(f.weights)}


def gen_cs_uinorm(rng, dim, n_atoms, trial, **_):
    X = ginibre(rng, dim)
    if trial % 10 == 0:
        left = OperatorField([1.0], [haar_unitary(rng, dim)], is_commuting_normal=True)
        right = OperatorField([1.0], [haar_unitary(rng, dim)], is_commuting_normal=True)
        family = "single_unitary"
    else:
        left = gen_field("commuting_normal_disk", n_atoms, dim, rng)
        U = haar_unitary(rng, dim)
        ops = [normal_from(U, disk_points(rng, dim)) for _ in range(n_atoms)]
        right = OperatorField(left.weights, ops, is_commuting_normal=True)
        family = "commuting_normal"
    return dict(T=IptiTransformer(left, right), X=X), {"family": family, "atoms": len(left)}


def _general_pair(rng, dim, n_atoms):
    F = gen_field("general", n_atoms, dim, rng)
    G = OperatorField(F.weights, [ginibre(rng, dim) for _ in range(n_atoms)])
    return F, G


def gen_cs_theta(rng, dim, n_atoms, trial, theta, **_):
    F, G = _general_pair(rng, dim, n_atoms)
    family = "random"
    if trial % 10 == 0:
        G, family = F, "equal_fields"
    return dict(F=F, G=G, theta=theta), {"family": family, "atoms": n_atoms, "theta": theta}


def gen_landau_theta(rng, dim, n_atoms, trial, theta, **_):
    return gen_cs_theta(rng, dim, n_atoms, trial, theta)


def _bounds(rng, dim):
    C = random_hermitian(rng, dim)
    G = ginibre(rng, dim) * rng.uniform(0.2, 1.5)
    return C, C + G @ adjoint(G)


def gen_gruss_operator(rng, dim, n_atoms, trial, **_):
    X = ginibre(rng, dim)
    if trial % 10 == 0:
        I = np.eye(dim, dtype=complex)
        F = OperatorField([0.5, 0.5], [-I, I], is_self_adjoint=True)
        inputs = dict(F=F, G=F, C=-I, D=I, E=-I, F_bnd=I, X=X)
        return inputs, {"family": "sign_witness", "atoms": 2}
    C, D = _bounds(rng, dim)
    E, F_bnd = _bounds(rng, dim)
    F = gen_field("hermitian_bounded", n_atoms, dim, rng, C=C, D=D)
    G_ops = gen_field("hermitian_bounded", n_atoms, dim, rng, C=E, D=F_bnd).ops
    G = OperatorField(F.weights, G_ops, is_self_adjoint=True)
    inputs = dict(F=F, G=G, C=C, D=D, E=E, F_bnd=F_bnd, X=X)
    return inputs, {"family": "sandwiched", "atoms": n_atoms}


def gen_elementary_gruss(rng, dim, n_atoms, trial, **_):
    inputs, params = gen_gruss_operator(rng, dim, n_atoms, trial)
    out = dict(As=list(inputs["F"].ops), Bs=list(inputs["G"].ops), C=inputs["C"],
               D=inputs["D"], E=inputs["E"], F=inputs["F_bnd"], X=inputs["X"])
    return out, params


def gen_schatten_landau(rng, dim, n_atoms, trial, pqr, **_):
    p, q, r = pqr
    F, G = _general_pair(rng, dim, n_atoms)
    family = "random"
    if trial % 10 == 0:
        F = OperatorField(F.weights, np.repeat(F.ops[:1], len(F), axis=0))
        family = "constant_left"
    inputs = dict(F=F, G=G, p=p, q=q, r=r, X=ginibre(rng, dim))
    return inputs, {"family": family, "atoms": n_atoms, "pqr": [p, q, r]}


def gen_mean_minimizer(rng, dim, n_atoms, trial, theta, **_):
    F = gen_field("general", n_atoms, dim, rng)
    scale = 10.0 ** rng.uniform(-3, 0)
    B = field_mean(F) + scale * ginibre(rng, dim)
    return dict(F=F, B=B, theta=theta), {"atoms": n_atoms, "theta": theta, "perturbation": scale}


def gen_hs_exact_norm(rng, dim, n_atoms, trial, **_):
    F, G = _general_pair(rng, dim, n_atoms)
    return dict(T=IptiTransformer(F, G)), {"atoms": n_atoms}


def gen_korkine(rng, dim, n_atoms, trial, **_):
    F, G = _general_pair(rng, dim, n_atoms)
    return dict(T=IptiTransformer(F, G), X=ginibre(rng, dim)), {"atoms": n_atoms}


def gen_variance(rng, dim, n_atoms, trial, **_):
    return dict(F=gen_field("general", n_atoms, dim, rng)), {"atoms": n_atoms}


def gen_covariance(rng, dim, n_atoms, trial, **_):
    f = random_herglotz(rng, min(n_atoms, MAX_HERGLOTZ_ATOMS))
    inputs = dict(f=f, A=random_normal_in_disk(rng, dim), U=haar_unitary(rng, dim))
    return inputs, {"atoms": len(f.weights)}


GENERATORS = {
    "gruss_scalar": gen_gruss_scalar,
    "p1": gen_p1,
    "c1": gen_c1,
    "c2": gen_c2,
    "c2_plus": gen_c2,
    "c3": gen_c3,
    "hilb": gen_hilb,
    "cs_uinorm": gen_cs_uinorm,
    "cs_theta": gen_cs_theta,
    "landau_theta": gen_landau_theta,
    "gruss_operator": gen_gruss_operator,
    "elementary_gruss": gen_elementary_gruss,
    "schatten_landau": gen_schatten_landau,
    "mean_minimizer": gen_mean_minimizer,
    "hs_exact_norm": gen_hs_exact_norm,
    "korkine": gen_korkine,
    "variance": gen_variance,
    "covariance": gen_covariance,
}
