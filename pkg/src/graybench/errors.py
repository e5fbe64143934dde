"""Exception hierarchy shared by all graybench modules."""


class GraybenchError(Exception):
    """Base class for every error raised by this package."""


class InvalidDimensionError(GraybenchError, ValueError):
    """Image or workload dimensions are not positive integers."""


class NetpbmFormatError(GraybenchError, ValueError):
    """Byte stream is not a well-formed binary PPM/PGM."""


class UnsupportedMaxvalError(NetpbmFormatError):
    """Header is well formed but uses a maxval other than 255."""


class TruncatedPayloadError(NetpbmFormatError):
    """Pixel payload is shorter than the header promises."""


class TargetFailureError(GraybenchError):
    """An external benchmark target could not be run or exited nonzero."""

    def __init__(self, message, stderr=""):
        super().__init__(message)
        self.stderr = stderr


class AlignmentError(GraybenchError, ValueError):
    """Two series do not cover the sizes an operation requires."""


class UndefinedRatioError(GraybenchError):
    """A ratio could not be formed because the divisor statistic is zero."""


class InsufficientDataError(GraybenchError, ValueError):
    """Not enough common data points for the requested analysis."""


class SchemaError(GraybenchError, ValueError):
    """A result CSV does not carry the expected columns."""


class OrderingError(GraybenchError, ValueError):
    """Result rows are not strictly ascending in pixel count."""


class ConfigError(GraybenchError, ValueError):
    """A benchmark matrix configuration is invalid."""


class ToolchainError(GraybenchError):
    """A required compiler or tool is missing from the environment."""


class BuildError(GraybenchError):
    """Compilation of an external target failed."""

    def __init__(self, message, diagnostics=""):
        super().__init__(message)
        self.diagnostics = diagnostics
