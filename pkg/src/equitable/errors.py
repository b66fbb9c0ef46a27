"""Exception types shared across the package."""


class ArtifactError(Exception):
    pass


class ParameterError(ArtifactError, ValueError):
    """Invalid parameter or out-of-domain argument."""


class EvaluationError(ArtifactError, ZeroDivisionError):
    """A denominator vanished during evaluation."""


class ResourceLimitError(ArtifactError):
    """An intermediate polynomial exceeded the configured term bound."""


class ShapeError(ArtifactError, ValueError):
    pass


class ParseError(ArtifactError, ValueError):
    pass


class ConsistencyError(ArtifactError):
    """Two independent computations that must agree did not."""


class RecognitionError(ArtifactError):
    pass


class NotRecurrentError(RecognitionError):
    pass


class NeedsHintError(RecognitionError):
    pass


class NotAModuleError(RecognitionError):
    pass
