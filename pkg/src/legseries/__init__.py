"""legseries: arbitrary-precision binomial harmonic sums, Legendre and
hypergeometric functions, modular-form constants, and a two-sided
verification harness for the identity catalog shipped in data/catalog.txt.
"""
from .context import PrecisionContext, DEFAULT_CTX
from .errors import (
    LegseriesError,
    PoleError,
    DomainError,
    BranchCutError,
    DivergenceError,
    ParameterPoleError,
    DivergencePoleError,
    NonConvergenceError,
    EvaluationError,
)

__version__ = "0.1.0"

__all__ = [
    "PrecisionContext",
    "DEFAULT_CTX",
    "LegseriesError",
    "PoleError",
    "DomainError",
    "BranchCutError",
    "DivergenceError",
    "ParameterPoleError",
    "DivergencePoleError",
    "NonConvergenceError",
    "EvaluationError",
    "__version__",
]
