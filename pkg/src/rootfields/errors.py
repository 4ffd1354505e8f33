"""Exception types shared across the library.

Every refusal the library makes is an explicit exception; no operation
silently degrades to an approximate or partial answer.
"""


class RootfieldsError(Exception):
    """Base class for all library errors."""


class ZeroPolynomial(RootfieldsError):
    """An operation received the zero polynomial where it is meaningless."""


class DegreeTooSmall(RootfieldsError):
    """Input degree below the operation's minimum (e.g. irreducibility of a constant)."""


class NotSquarefree(RootfieldsError):
    """Operation requires a squarefree polynomial."""


class NotIrreducible(RootfieldsError):
    """Operation requires an irreducible polynomial."""


class EndpointIsRoot(RootfieldsError):
    """A Sturm query was made with an interval endpoint that is a root."""


class DegreeCapExceeded(RootfieldsError):
    """A configured degree cap refuses the computation.

    This is an honest outcome, never a wrong answer.  ``estimate`` carries
    the offending degree estimate.
    """

    def __init__(self, message: str, estimate: int | None = None):
        super().__init__(message)
        self.estimate = estimate


class InconsistentTower(RootfieldsError):
    """Internal consistency check of a splitting tower failed."""


class EmbeddingUnresolved(RootfieldsError):
    """Root boxes were too coarse to resolve an embedding question even
    after the refinement budget; callers should refine and retry."""


class ElementNotInGroup(RootfieldsError):
    """A permutation passed to a group operation is not a group member."""


class DimensionMismatch(RootfieldsError):
    """Vector/matrix/subspace dimensions disagree."""


class IndexSetNotProper(RootfieldsError):
    """A hyperplane index set must be a proper subset of the block indices."""


class NoInvariantComplement(RootfieldsError):
    """No G-invariant complement exists for the span of the blocks built
    so far; the block construction cannot continue."""


class GroupTooLarge(RootfieldsError):
    """Generated matrix group exceeded the closure size cap."""


class ParseError(RootfieldsError):
    """Input text could not be parsed.  ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position
