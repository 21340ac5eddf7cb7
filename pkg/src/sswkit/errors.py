"""Exception hierarchy shared by every sswkit module."""


class SswError(Exception):
    """Base class for all sswkit errors."""


class InvalidParams(SswError, ValueError):
    pass


class NotAligned(SswError, ValueError):
    """Raised when an operation needs L to be a multiple of J."""


class BadLength(SswError, ValueError):
    pass


class OracleLimitExceeded(SswError):
    pass


class StateLimitExceeded(SswError):
    pass


class BadWordLimitExceeded(SswError):
    pass


class DimensionTooLarge(SswError):
    pass


class AlphabetTooLarge(SswError):
    pass


class EmptyCode(SswError, ValueError):
    pass


class InfeasibleFsm(SswError):
    pass


class InternalConsistencyError(SswError, ArithmeticError):
    """A computed quantity violated an identity that must hold exactly."""


class NoConvergence(SswError):
    """Iteration cap reached; carries the best estimate seen."""

    def __init__(self, message, estimate=None, residual=None):
        super().__init__(message)
        self.estimate = estimate
        self.residual = residual
