"""Exception hierarchy shared by all modules."""


class EntropyBoundsError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(EntropyBoundsError, ValueError):
    pass


class ParseError(EntropyBoundsError, ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantViolation(EntropyBoundsError, ValueError):
    pass


class NumericFailure(EntropyBoundsError, ArithmeticError):
    pass


class EnergyOutOfRange(EntropyBoundsError, ValueError):
    """Target energy cannot be reached on the available truncation.

    ``interval`` holds the reachable open interval of mean energies.
    """

    def __init__(self, message, interval=None):
        super().__init__(message)
        self.interval = interval


class TruncationLimit(EntropyBoundsError, RuntimeError):
    pass


class HypothesisViolation(EntropyBoundsError, ValueError):
    def __init__(self, message, label=None):
        super().__init__(message)
        self.label = label


class ThresholdNotReached(EntropyBoundsError, RuntimeError):
    """Raised when the entropy curve saturates before the contradiction target.

    ``partial`` carries the certificate built so far (with the achieved maximum).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
