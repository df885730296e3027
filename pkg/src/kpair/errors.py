"""Exception types shared across the package."""


class DegreeMismatchError(ValueError):
    """A sampled sequence interpolates to a higher degree than its model allows."""


class InternalInconsistencyError(RuntimeError):
    """Two bookkeeping routes that must agree exactly disagreed (a caller bug)."""


class QuadratureAccuracyError(RuntimeError):
    """Quadrature refinement stalled before reaching the requested tolerance."""

    def __init__(self, message, achieved=None, estimate=None):
        super().__init__(message)
        self.achieved = achieved  # last refinement difference
        self.estimate = estimate  # best value so far


class DegeneracyError(RuntimeError):
    """The cycle support spans a proper linear subspace; the metric update is singular."""


class VerificationError(RuntimeError):
    """A numerical verification suite found a deviation beyond its tolerance."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
