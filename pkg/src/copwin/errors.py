"""Exception hierarchy shared by all copwin modules."""


class CopwinError(Exception):
    """Base class for all errors raised by this package."""


class BudgetExceeded(CopwinError):
    """A configured node/enumeration budget was exhausted before an answer."""


class TooLarge(CopwinError):
    """Instance exceeds the cap of a deliberately naive oracle."""


class CyclicError(CopwinError):
    """Raised when an acyclic order was requested on a cyclic digraph.

    Carries a witness cycle as a list of vertices v0 -> v1 -> ... -> v0.
    """

    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"digraph contains a cycle: {self.cycle}")


class NotWinnable(CopwinError):
    """The requested number of cops has no winning strategy."""


class InvalidK(CopwinError, ValueError):
    """Cop count must be a non-negative integer."""


class LengthMismatch(CopwinError, ValueError):
    """A supplied ordering is not a permutation of the vertex set."""


class DimensionMismatch(CopwinError, ValueError):
    """Boolean matrices of different dimensions were combined."""


class NotRound(CopwinError):
    """The supplied ordering is not a round ordering of the digraph."""


class NotFVS(CopwinError):
    """The supplied vertex set does not intersect every directed cycle."""


class NotTournament(CopwinError):
    """The digraph is not a tournament."""


class NotAPartition(CopwinError, ValueError):
    """The supplied triplets are not a valid equal-sum partition."""


class InvalidInstance(CopwinError, ValueError):
    """Malformed 3-partition instance."""


class InvalidParams(CopwinError, ValueError):
    """Generator parameters outside their documented range."""


class HasSink(CopwinError):
    """Vertex subdivision requires every vertex to have an out-neighbor."""


class NotWinning(CopwinError):
    """A strategy that was required to be winning fails verification."""


class ParseError(CopwinError):
    """Malformed graph or strategy file; carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IndexOutOfRange(ParseError):
    """Vertex index in a file is outside the declared universe."""
