"""Exception hierarchy shared by all qineq modules."""


class QineqError(Exception):
    """Base class for every error raised by the package."""


class NumericalError(QineqError):
    """A computation could not meet its accuracy contract."""


class ProfileInvalid(QineqError, ValueError):
    """A squeeze profile cannot be realized with the requested parameters.

    ``k`` holds the first offending wavenumber when the failure is local.
    """

    def __init__(self, message, k=None):
        super().__init__(message)
        self.k = k


class SamplerMismatch(QineqError, ValueError):
    pass


class DimensionTooSmall(QineqError, ValueError):
    pass


class ConvergenceFailure(NumericalError):
    pass


class TruncationError(NumericalError):
    pass


class ToleranceNotMet(NumericalError):
    """Adaptive quadrature ran out of subdivisions.

    The best available estimate and its error bound are kept on the exception.
    """

    def __init__(self, message, value, error_estimate):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class WindowTooSmall(NumericalError):
    pass


class DegenerateAbscissae(QineqError, ValueError):
    pass


class ConfigError(QineqError, ValueError):
    """Invalid experiment configuration; ``field`` is the dotted key at fault."""

    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field
