"""Exception types shared across the package."""


class DimensionError(ValueError):
    """Tuple widths or arities do not line up."""


class CapacityError(ValueError):
    """Request exceeds a hard size limit (cube width, enumeration order, search budget)."""


class NotAntichainError(ValueError):
    """A support set contains a comparable pair."""


class InvalidCircuitError(ValueError):
    """Circuit fails structural checks required for evaluation."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class ParseError(ValueError):
    """Malformed `ac-circuit v1` / `ac-cert v1` text."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class NotTargetFunctionError(ValueError):
    """Circuit does not compute the function the adversary was asked to attack."""


class InvariantViolation(AssertionError):
    """A runtime check of the chain construction failed.

    Carries the adversary transcript up to the failure so the run can be replayed.
    """

    def __init__(self, message, transcript=()):
        super().__init__(message)
        self.transcript = list(transcript)
