"""Numerical checks of Gruss, Landau and Cauchy-Schwarz type inequalities for
inner product type integral transformers on matrices."""

from .errors import (
    ConfigInvalid,
    DecompositionFailure,
    DimensionMismatch,
    EmptyInput,
    HypothesisViolated,
    IpttError,
    NotApplicable,
)
from .funcalc import HerglotzFn, herglotz_apply, herglotz_eval
from .harness import SweepConfig, TrialReport, run_sweep, summarize
from .ineqsuite import EVALUATORS, IneqInstance, MarginResult, evaluate
from .transformer import IptiTransformer, OperatorField, apply, gen_field
from .uinorms import UINorm, norm

__version__ = "0.1.0"
