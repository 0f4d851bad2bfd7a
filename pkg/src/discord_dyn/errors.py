"""Exception types raised across the package."""


class DiscordDynError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(DiscordDynError, ValueError):
    pass


class NonHermitian(DiscordDynError, ValueError):
    pass


class NoConvergence(DiscordDynError, ArithmeticError):
    pass


class NegativeEigenvalue(DiscordDynError, ValueError):
    pass


class TraceNotOne(DiscordDynError, ValueError):
    pass


class NotPositive(DiscordDynError, ValueError):
    pass


class ParameterOutOfRange(DiscordDynError, ValueError):
    pass


class NegativeParameter(DiscordDynError, ValueError):
    pass


class CompletenessViolation(DiscordDynError, ValueError):
    """A Kraus set whose sum of K^dagger K is not the identity."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"Kraus completeness residual {residual:.3e} exceeds tolerance")


class OracleMismatch(DiscordDynError, ArithmeticError):
    """The Kraus-sum and closed-form evolution paths disagree."""
