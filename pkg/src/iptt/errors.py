"""Exception types shared across the package.

Hypothesis failures (non-normal input, spectrum outside the disk, ...) all
derive from :class:`HypothesisViolated` so a caller can treat "the theorem
does not apply" uniformly, separate from numerical breakdown.
"""


class IpttError(Exception):
    pass


class DecompositionFailure(IpttError, ArithmeticError):
    """An SVD or eigen-iteration did not converge."""


class DimensionMismatch(IpttError, ValueError):
    pass


class NotApplicable(IpttError, ValueError):
    """Argument outside an operation's domain (e.g. a negative power)."""


class HypothesisViolated(IpttError, ValueError):
    pass


class NotNormal(HypothesisViolated):
    pass


class NotPSD(HypothesisViolated):
    pass


class SpectrumNotInDisk(HypothesisViolated):
    pass


class OutsideDisk(HypothesisViolated):
    pass


class NotProbability(HypothesisViolated):
    pass


class BadBounds(HypothesisViolated):
    pass


class BadExponents(HypothesisViolated):
    pass


class ConfigInvalid(IpttError, ValueError):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class EmptyInput(IpttError, ValueError):
    pass
