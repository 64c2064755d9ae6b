"""Custom exception types for detstrata computations."""


class DetStrataError(Exception):
    """Base exception for all detstrata operations."""


class InvalidSpecError(DetStrataError):
    """Raised when a degree-matrix spec, polynomial text or field parameter is invalid."""


class InconsistentSystem(DetStrataError):
    """Raised when a linear system has no solution."""


class TruncationExceeded(DetStrataError):
    """Raised when a degree or homological bound cuts off data a result depends on."""

    def __init__(self, message: str, bound: int) -> None:
        super().__init__(f"{message} (bound {bound})")
        self.bound = bound


class NotStandard(DetStrataError):
    """Raised when a determinantal ideal does not have the expected codimension."""


class EmptyStratum(DetStrataError):
    """Raised when a degree matrix defines an empty stratum."""


class StratumEmpty(EmptyStratum):
    """Raised when no sample of a stratum could be produced for a comparison."""


class HypothesisNotVerified(DetStrataError):
    """Raised when a theorem is applied without its hypotheses being verified."""

    def __init__(
        self,
        theorem: str,
        hypothesis: str,
        *,
        undecided: bool = False,
        verified: tuple[str, ...] = (),
    ) -> None:
        reason = "could not be decided within bounds" if undecided else "fails"
        super().__init__(f"{theorem}: hypothesis '{hypothesis}' {reason}")
        self.theorem = theorem
        self.hypothesis = hypothesis
        self.undecided = undecided
        self.verified = verified


class NotACornerOverlap(DetStrataError):
    """Raised when a degree-matrix reduction is requested away from a corner overlap."""


class SyzygyIncompatible(DetStrataError):
    """Raised when an assignment on ideal generators violates a syzygy."""
