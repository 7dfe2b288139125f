"""Exception hierarchy shared by all modules."""


class LegseriesError(Exception):
    """Base class for all library errors."""


class PoleError(LegseriesError):
    """Function evaluated at a pole (e.g. gamma at a nonpositive integer)."""


class DomainError(LegseriesError):
    """Argument outside the domain of validity of a formula."""


class BranchCutError(DomainError):
    """Evaluation requested on or across a branch cut without a side."""


class DivergenceError(LegseriesError):
    """A series does not converge for the given parameters."""


class ParameterPoleError(LegseriesError):
    """A lower hypergeometric parameter hit a nonpositive integer."""


class DivergencePoleError(LegseriesError):
    """Green's function evaluated at colliding points (logarithmic pole)."""


class NonConvergenceError(LegseriesError):
    """A numerical scheme failed to reach the requested tolerance."""


class EvaluationError(LegseriesError):
    """Wraps any error raised while verifying a catalog identity."""

    def __init__(self, identity_id: str, cause: Exception):
        super().__init__(f"{identity_id}: {cause!r}")
        self.identity_id = identity_id
        self.cause = cause
