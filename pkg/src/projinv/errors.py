"""Exception types.

Every guard failure raised while evaluating an invariant derives from
:class:`SingularPointError`, so callers that sample many points can skip
singular ones with a single ``except`` clause.
"""


class ProjinvError(Exception):
    """Base class for all package errors."""


class SingularPointError(ProjinvError, ArithmeticError):
    """A formula is undefined (or numerically unsafe) at the evaluation point."""


class DivisionByNearZero(SingularPointError):
    pass


class NegativeBaseFractionalPower(SingularPointError):
    pass


class DomainError(SingularPointError, ValueError):
    pass


class DepthExhausted(ProjinvError):
    """Not enough jet order left to take another derivative."""


class ZeroDensity(SingularPointError):
    pass


# curve input
class UnknownIdentifier(ProjinvError, NameError):
    pass


class ExpressionSyntaxError(ProjinvError, SyntaxError):
    """Malformed curve expression. ``offset`` is the 1-based column."""

    def __init__(self, message, text=None, offset=None):
        super().__init__(message)
        self.msg = message
        self.text = text
        self.offset = offset

    def __str__(self):
        if self.offset is None:
            return self.msg
        return f"{self.msg} (at offset {self.offset})"


class DimensionMismatch(ProjinvError, ValueError):
    pass


# group actions and projections
class OnHyperplaneAtInfinity(SingularPointError):
    pass


class CenterPlaneSingularity(SingularPointError):
    pass


class VerticalTangent(SingularPointError):
    pass


# plane invariants
class InflectionPoint(SingularPointError):
    pass


class ConicPoint(SingularPointError):
    pass


class NonConvexPoint(SingularPointError):
    pass


# space invariants
class DegeneratePoint(SingularPointError):
    pass


class ZeroKappa(SingularPointError):
    pass


class ZeroAlpha(SingularPointError):
    pass


class NegativeAlphaBranch(SingularPointError):
    pass


class NegativeKappaBranch(SingularPointError):
    pass


class NonConvexProjection(SingularPointError):
    pass


class DegenerateZ3(SingularPointError):
    pass


class FoldSingularity(SingularPointError):
    pass


class InternalInconsistency(ProjinvError):
    """Two independent evaluations of the same quantity disagree."""


# harness
class AllPointsSingular(ProjinvError):
    pass


class InsufficientRegularSamples(ProjinvError):
    pass


class GroupMismatch(ProjinvError, ValueError):
    pass
