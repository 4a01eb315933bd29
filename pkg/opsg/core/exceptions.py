"""Exception hierarchy shared by the library and the command line."""


class OpsgError(Exception):
    """Base class for every error raised by opsg.

    Attributes:
        exit_code: Process exit status the CLI reports for this error
    """

    exit_code: int = 2

    def __init__(self, message: str = "") -> None:
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__

    def to_dict(self) -> dict:
        return {"error": self.__class__.__name__, "message": self.message, "exit_code": self.exit_code}


# ---------------------------------------------------------
# Bad input (exit 2)
# ---------------------------------------------------------
class DegenerateInput(OpsgError):
    """Point set too small, not in general position, or otherwise unusable."""


class DegenerateAngle(OpsgError):
    """An angle was requested with a ray of zero length."""


class PointNotExterior(OpsgError):
    """A point expected outside a convex hull lies inside or on it."""


class NotConvexPosition(OpsgError):
    """Some point of the set is not a vertex of its convex hull."""


class NotHullVertex(OpsgError):
    """Point is not a vertex of the convex hull of its set."""


class NotHullEdge(OpsgError):
    """Pair of points is not an edge of the convex hull of its set."""


class BadShape(OpsgError):
    """Generator parameters do not describe a valid family member."""


class PreconditionViolated(OpsgError):
    """A construction step was called outside its documented precondition."""


class MalformedFile(OpsgError):
    """A point or graph file does not follow the text format."""


# ---------------------------------------------------------
# Validation failure (exit 1)
# ---------------------------------------------------------
class ConstructionInvariantViolated(OpsgError):
    """A construction produced a graph that fails its own postcondition."""

    exit_code = 1


class ValidationFailed(OpsgError):
    """A graph handed to `verify` does not meet the requested bound or class."""

    exit_code = 1


# ---------------------------------------------------------
# Oracle (exit 3)
# ---------------------------------------------------------
class OracleTooLarge(OpsgError):
    """The point set exceeds the configured exhaustive-search cap."""

    exit_code = 3
