"""Exception types shared across the package."""


class ValidationError(ValueError):
    """A physical parameter set violates its constraints."""


class SingularDenominator(ArithmeticError):
    """The interference denominator 1 - T1*T2*exp(2ikL/v) has (numerically)
    vanished: the closed-form amplitudes are indeterminate at this exact
    parameter point and no limit is returned."""


class SingularSystem(ArithmeticError):
    """The steady-state 2x2 system is singular (same physical condition as
    :class:`SingularDenominator`)."""


class StepTooLarge(ValueError):
    """Requested integration step cannot resolve the emitter dynamics or the
    propagation delay."""


class UnresolvedDelay(ValueError):
    """Requested integration step exceeds the inter-emitter delay L/v_g."""


class TraceTruncated(RuntimeError):
    """A time trace ended while a non-negligible fraction of the input energy
    was still stored in the emitters."""


class InvalidAxisMapping(ValueError):
    """A sweep axis cannot be resolved to model parameters."""


class ParseError(ValueError):
    """A configuration file could not be parsed.

    Attributes
    ----------
    line : int or None
        1-based line number of the offending line, when known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
