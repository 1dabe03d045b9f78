"""Seeded sweeps over the inequality suite, with JSON/CSV reports.

Every (inequality id, trial, dim) cell draws its instance from a private RNG
whose seed is a splitmix64 mix of the sweep seed with the cell coordinates.
Cells are therefore independent: any one can be rerun alone, and serial and
parallel runs produce the same reports.
"""

from __future__ import annotations

import csv
import io
import json
import math
import statistics
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from .errors import ConfigInvalid, EmptyInput
from .ineqsuite import EVALUATORS, TOL_INEQ, IneqInstance, check_exponents, evaluate
from .instances import GENERATORS
from .uinorms import UINorm

MASK64 = (1 << 64) - 1

CHECK_IDS = (
    "gruss_scalar", "p1", "c1", "c2", "c3", "hilb", "cs_uinorm", "cs_theta",
    "landau_theta", "gruss_operator", "elementary_gruss", "schatten_landau",
    "mean_minimizer",
)
IDENTITY_IDS = ("korkine", "variance", "hs_exact_norm", "covariance")
DIAGNOSTIC_IDS = ("c2_plus",)
ALL_IDS = CHECK_IDS + IDENTITY_IDS + DIAGNOSTIC_IDS

NO_NORM = "-"

CSV_COLUMNS = (
    "id", "trial", "seed", "dim", "norm", "lhs", "rhs", "margin",
    "relative_margin", "violation", "params", "hypothesis_report", "wall_time",
)


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, ineq_id: str, trial: int, dim: int) -> int:
    """Per-cell seed: fold crc32(id), trial and dim into the sweep seed."""
    x = splitmix64(seed & MASK64)
    for part in (zlib.crc32(ineq_id.encode()), trial, dim):
        x = splitmix64(x ^ splitmix64(part & MASK64))
    return x


@dataclass(frozen=True)
class SweepConfig:
    inequality_ids: tuple[str, ...] = CHECK_IDS
    trials: int = 100
    dims: tuple[int, ...] = (2, 4)
    atoms: tuple[int, ...] = (1, 2, 3, 4)
    norms: tuple[str, ...] = ("op", "s1", "s2", "kf2")
    seed: int = 42
    theta_grid: tuple[float, ...] = (0.5, 1.0, 2.0)
    pqr_grid: tuple[tuple[float, float, float], ...] = ((1.0, 1.0, 1.0), (2.0, 2.0, 2.0), (4 / 3, 1.0, 2.0))
    out_path: str | None = None
    format: str = "json"
    tol: float = TOL_INEQ
    timing: bool = False

    def __post_init__(self):
        # normalize list inputs (e.g. from JSON) into tuples
        for name in ("inequality_ids", "dims", "atoms", "norms", "theta_grid"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "pqr_grid", tuple(tuple(float(v) for v in t) for t in self.pqr_grid))
        self.validate()

    def validate(self):
        if not self.inequality_ids:
            raise ConfigInvalid("inequality_ids", "must be nonempty")
        for i in self.inequality_ids:
            if i not in EVALUATORS:
                raise ConfigInvalid("inequality_ids", f"unknown id {i!r}")
        if len(set(self.inequality_ids)) != len(self.inequality_ids):
            raise ConfigInvalid("inequality_ids", "duplicate ids")
        if not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigInvalid("trials", "must be a positive integer")
        if not self.dims or any(not isinstance(d, int) or not 1 <= d <= 16 for d in self.dims):
            raise ConfigInvalid("dims", "must be a nonempty list of integers in [1, 16]")
        if not self.atoms or any(not isinstance(a, int) or not 1 <= a <= 8 for a in self.atoms):
            raise ConfigInvalid("atoms", "must be a nonempty list of integers in [1, 8]")
        if not self.norms:
            raise ConfigInvalid("norms", "must be nonempty")
        for label in self.norms:
            try:
                UINorm.parse(label)
            except ValueError as exc:
                raise ConfigInvalid("norms", str(exc)) from None
        if not isinstance(self.seed, int) or not 0 <= self.seed <= MASK64:
            raise ConfigInvalid("seed", "must be an unsigned 64-bit integer")
        if not self.theta_grid or any(not t > 0 for t in self.theta_grid):
            raise ConfigInvalid("theta_grid", "must be a nonempty list of positive exponents")
        if not self.pqr_grid:
            raise ConfigInvalid("pqr_grid", "must be nonempty")
        for t in self.pqr_grid:
            if len(t) != 3:
                raise ConfigInvalid("pqr_grid", f"{t} is not a (p, q, r) triple")
            try:
                check_exponents(*t)
            except ValueError as exc:
                raise ConfigInvalid("pqr_grid", str(exc)) from None
        if self.format not in ("json", "csv"):
            raise ConfigInvalid("format", "must be 'json' or 'csv'")
        if not (self.tol >= 0 and math.isfinite(self.tol)):
            raise ConfigInvalid("tol", "must be a finite nonnegative number")

    @classmethod
    def from_dict(cls, data: dict) -> SweepConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigInvalid(sorted(unknown)[0], "unknown config field")
        return cls(**data)

    @classmethod
    def from_json(cls, path: str) -> SweepConfig:
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        d = asdict(self)
        for k, v in d.items():
            if isinstance(v, tuple):
                d[k] = [list(x) if isinstance(x, tuple) else x for x in v]
        return d


@dataclass(frozen=True)
class TrialReport:
    id: str
    trial: int
    seed: int
    dim: int
    norm: str
    lhs: float
    rhs: float
    margin: float
    relative_margin: float
    violation: bool
    params: dict = field(default_factory=dict)
    hypothesis_report: tuple[str, ...] = ()
    wall_time: float | None = None


def _norm_labels(cfg: SweepConfig, ineq_id: str) -> tuple[str, ...]:
    return cfg.norms if EVALUATORS[ineq_id].takes_norm else (NO_NORM,)


def run_cell(cfg: SweepConfig, ineq_id: str, trial: int, dim: int) -> list[TrialReport]:
    """All reports for one (id, trial, dim) cell, one per norm."""
    seed = derive_seed(cfg.seed, ineq_id, trial, dim)
    rng = np.random.default_rng(seed)
    n_atoms = int(cfg.atoms[int(rng.integers(len(cfg.atoms)))])
    theta = cfg.theta_grid[trial % len(cfg.theta_grid)]
    pqr = cfg.pqr_grid[trial % len(cfg.pqr_grid)]
    inputs, params = GENERATORS[ineq_id](rng, dim=dim, n_atoms=n_atoms, trial=trial,
                                         theta=theta, pqr=pqr)
    out = []
    for label in _norm_labels(cfg, ineq_id):
        norm = None if label == NO_NORM else UINorm.parse(label)
        t0 = time.perf_counter()
        res = evaluate(IneqInstance(ineq_id, inputs, norm))
        elapsed = time.perf_counter() - t0 if cfg.timing else None
        out.append(TrialReport(
            id=ineq_id, trial=trial, seed=seed, dim=dim, norm=label,
            lhs=res.lhs, rhs=res.rhs, margin=res.margin,
            relative_margin=res.relative_margin,
            violation=bool(res.violated(cfg.tol if res.kind == "bound" else None)),
            params=params, hypothesis_report=res.hypothesis_report, wall_time=elapsed,
        ))
    return out


def _cells(cfg: SweepConfig):
    for i in cfg.inequality_ids:
        for trial in range(cfg.trials):
            for d in cfg.dims:
                yield i, trial, d


def _run_cells(args):
    cfg, cells = args
    return [r for c in cells for r in run_cell(cfg, *c)]


def _sort_key(cfg: SweepConfig):
    id_pos = {i: k for k, i in enumerate(cfg.inequality_ids)}
    dim_pos = {d: k for k, d in enumerate(cfg.dims)}
    norm_pos = {n: k for k, n in enumerate(cfg.norms)}
    norm_pos[NO_NORM] = -1
    return lambda r: (id_pos[r.id], r.trial, dim_pos[r.dim], norm_pos[r.norm])


def run_sweep(cfg: SweepConfig, workers: int = 1, chunk: int = 64) -> list[TrialReport]:
    """Run every cell of the sweep; reports come back in (id, trial, dim, norm) order."""
    cells = list(_cells(cfg))
    if workers <= 1:
        reports = _run_cells((cfg, cells))
    else:
        batches = [(cfg, cells[i:i + chunk]) for i in range(0, len(cells), chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = [r for batch in pool.map(_run_cells, batches) for r in batch]
    return sorted(reports, key=_sort_key(cfg))


def summarize(reports: list[TrialReport]) -> dict:
    """Per-id count, min/median margin, min relative margin, violations, sharpest seed."""
    if not reports:
        raise EmptyInput("no reports to summarize")
    by_id: dict[str, list[TrialReport]] = {}
    for r in reports:
        by_id.setdefault(r.id, []).append(r)
    out = {}
    for i, rs in by_id.items():
        sharpest = min(rs, key=lambda r: r.relative_margin)
        out[i] = {
            "count": len(rs),
            "min_margin": min(r.margin for r in rs),
            "median_margin": statistics.median(r.margin for r in rs),
            "min_relative_margin": sharpest.relative_margin,
            "violations": sum(r.violation for r in rs),
            "sharpest_seed": sharpest.seed,
            "sharpest_trial": sharpest.trial,
        }
    return out


def _report_dict(r: TrialReport) -> dict:
    d = asdict(r)
    d["hypothesis_report"] = list(r.hypothesis_report)
    return d


def to_json(cfg: SweepConfig, reports: list[TrialReport]) -> str:
    doc = {
        "config": cfg.to_dict(),
        "reports": [_report_dict(r) for r in reports],
        "summary": summarize(reports),
    }
    return json.dumps(doc, indent=1, ensure_ascii=False, allow_nan=True) + "\n"


def to_csv(reports: list[TrialReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        d = _report_dict(r)
        d["params"] = json.dumps(r.params, sort_keys=True)
        d["hypothesis_report"] = "; ".join(r.hypothesis_report)
        w.writerow(["" if d[c] is None else d[c] for c in CSV_COLUMNS])
    return buf.getvalue()


def write_report(cfg: SweepConfig, reports: list[TrialReport], path: str | None = None) -> str:
    text = to_json(cfg, reports) if cfg.format == "json" else to_csv(reports)
    path = path or cfg.out_path
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
