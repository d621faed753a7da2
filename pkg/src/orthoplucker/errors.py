"""Exception types shared across the package."""


class OrthoPluckerError(Exception):
    """Base class for all errors raised by this package."""


class SpaceMismatch(OrthoPluckerError, ValueError):
    pass


class DegreeError(OrthoPluckerError, ValueError):
    pass


class RelationViolated(OrthoPluckerError):
    """Raised by ``decompose`` when the input fails the orthogonal relation."""


class NotMetricInvariant(OrthoPluckerError):
    pass


class InvalidAction(OrthoPluckerError, ValueError):
    pass


class Unsupported(OrthoPluckerError):
    pass


class AmbiguousCase(OrthoPluckerError):
    def __init__(self, message, candidates=()):
        super().__init__(message)
        self.candidates = tuple(candidates)


class SamplingExhausted(OrthoPluckerError):
    pass
