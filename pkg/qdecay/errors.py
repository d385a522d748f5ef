"""Exception hierarchy shared by every qdecay module."""


class QdecayError(Exception):
    """Base class for all qdecay errors."""


class DimensionError(QdecayError, ValueError):
    """Matrix shapes do not fit the requested operation."""


class NonFiniteError(QdecayError, ValueError):
    """A NaN or Inf tried to enter a matrix."""


class NotHermitianError(QdecayError, ValueError):
    """Input asymmetry exceeds the Hermiticity tolerance."""

    def __init__(self, message, asymmetry=None):
        super().__init__(message)
        self.asymmetry = asymmetry


class ConvergenceError(QdecayError, ArithmeticError):
    """Iterative kernel hit its iteration cap."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InvalidStateError(QdecayError, ValueError):
    """Matrix is not a valid two-qubit density matrix."""


class ParameterRangeError(QdecayError, ValueError):
    """A physical or grid parameter lies outside its allowed range."""


class NotXStateError(QdecayError, ValueError):
    """Closed-form X-state formula applied to a matrix without X shape."""


class ConfigError(QdecayError):
    """Command-line configuration rejected before any computation."""


class NumericalError(QdecayError, ArithmeticError):
    """A computed quantity violates an identity it must satisfy."""
