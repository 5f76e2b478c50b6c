"""Exception hierarchy shared by all modules."""


class EulerCalcError(ValueError):
    """Base class for every error raised by the library."""


class DimensionUnsupported(EulerCalcError):
    pass


class AmbientMismatch(EulerCalcError):
    pass


class NotSimple(EulerCalcError):
    pass


class PointOutside(EulerCalcError):
    pass


class NotCompactlySupported(EulerCalcError):
    pass


class UnboundedTerm(EulerCalcError):
    pass


class ArrangementTooLarge(EulerCalcError):
    pass


class LowerDimensionalBody(EulerCalcError):
    pass


class NotConvex(EulerCalcError):
    pass


class NotFullDim(EulerCalcError):
    pass


class ParseError(EulerCalcError):
    """Malformed input. ``path`` locates the offending JSON field."""

    def __init__(self, message, path=""):
        super().__init__(message)
        self.path = path


class ValidationError(EulerCalcError):
    """Input parsed but violates a type invariant."""

    def __init__(self, message, path=""):
        super().__init__(message)
        self.path = path


class VerificationFailed(EulerCalcError):
    pass
