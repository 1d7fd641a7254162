"""Exception hierarchy.

Every error raised by the package derives from :class:`MdseError`.  Errors
that come out of document parsing carry a ``location`` string such as
``"edges[3]"`` so the CLI can point at the offending entry.
"""


class MdseError(Exception):
    def __init__(self, message: str = "", location: str | None = None):
        self.location = location
        super().__init__(message)

    def __str__(self):
        msg = super().__str__()
        if self.location:
            return f"{self.location}: {msg}"
        return msg


# -- input values -----------------------------------------------------------


class InputError(MdseError, ValueError):
    pass


class NotNormalized(InputError):
    pass


class OutOfRange(InputError):
    pass


class LengthMismatch(InputError):
    pass


class EmptyInput(InputError):
    pass


class ZeroTotal(InputError):
    pass


class ZeroHypotheses(InputError):
    pass


# -- graph structure --------------------------------------------------------


class GraphError(MdseError):
    pass


class Frozen(GraphError):
    pass


class NotFrozen(GraphError):
    pass


class UnknownId(GraphError, KeyError):
    def __str__(self):
        return MdseError.__str__(self)


class LoopDetected(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class BadDirection(GraphError):
    pass


class NotValid(GraphError):
    """Raised when a query needs a Relaxed-valid graph and did not get one."""

    def __init__(self, message="", location=None, report=None):
        super().__init__(message, location)
        self.report = report


# -- numerics ---------------------------------------------------------------


class NumericError(MdseError, ArithmeticError):
    pass


class ZeroEvidence(NumericError):
    pass


class ValueExceedsOne(NumericError):
    pass


# -- oracle / generator / bench ---------------------------------------------


class TooLarge(MdseError):
    pass


class Infeasible(MdseError):
    pass


class TooFewPoints(MdseError, ValueError):
    pass


class NonMonotoneSizes(MdseError, ValueError):
    pass


# -- documents --------------------------------------------------------------


class DocumentError(MdseError):
    pass


class DocumentSyntaxError(DocumentError):
    pass


class SchemaError(DocumentError):
    pass
