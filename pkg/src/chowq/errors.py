"""Exception hierarchy shared by all chowq modules."""


class ChowqError(ValueError):
    """Base class for every error raised by chowq."""


class RankDeficient(ChowqError):
    pass


class NoSolution(ChowqError):
    pass


class ZeroVector(ChowqError):
    pass


class DimensionMismatch(ChowqError):
    pass


class NotSurjective(ChowqError):
    pass


class OutsideSupport(ChowqError):
    pass


class NotAHyperplane(ChowqError):
    pass


class ScaleExceeded(ChowqError):
    pass


class NotInSpan(ChowqError):
    pass


class NotHomogeneous(ChowqError):
    pass


class ShapeMismatch(ChowqError):
    pass


class NotOnTropical(ChowqError):
    pass


class InconsistentDiagram(ChowqError):
    pass


class InvalidWeights(ChowqError):
    pass


class NotAFan(ChowqError):
    """The cones produced by a construction fail the fan axioms."""


class HypothesisViolated(ChowqError):
    """Raised when a mathematical precondition fails; `condition` names it."""

    def __init__(self, condition, detail=""):
        self.condition = condition
        self.detail = detail
        msg = condition if not detail else f"{condition}: {detail}"
        super().__init__(msg)


class CertificateFailed(ChowqError):
    """A certificate that theory guarantees did not verify (internal fault)."""


class ParseError(ChowqError):
    """Malformed input; `line` and `field` locate the problem when known."""

    def __init__(self, message, *, line=None, field=None):
        self.line = line
        self.field = field
        super().__init__(message)
