"""Precision bookkeeping.

All numerical routines take a :class:`PrecisionContext` and perform their
arithmetic at ``working_digits = target_digits + guard_digits`` decimal
digits.  Error control is by guard digits plus the doubled-precision
agreement check run by the verification layer, not by interval arithmetic.

The scalar type throughout the library is the mpmath ``mpf``/``mpc`` pair;
precision is a property of the context a value was computed under, not a
per-value tag.  Complex powers and logarithms follow mpmath's principal
branch: ``Im log z`` lies in ``(-pi, pi]`` and ``z**b = exp(b log z)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from mpmath import mp, mpf, workdps


@dataclass(frozen=True)
class PrecisionContext:
    """Target precision plus guard digits for intermediate arithmetic."""

    target_digits: int = 30
    guard_digits: int = 15

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_digits < 10:
            raise ValueError("guard_digits must be at least 10")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    def workdps(self):
        """Context manager raising mpmath's precision to working_digits.

        Never lowers an already-higher ambient precision: internal layers
        (quadrature notably) boost precision for endpoint resolution, and a
        leaf routine re-entering its context must not round their arguments
        back down.
        """
        return workdps(max(mp.dps, self.working_digits))

    @property
    def eps(self):
        """10^(-working_digits), the working resolution."""
        with self.workdps():
            return mpf(10) ** (-self.working_digits)

    @property
    def target_eps(self):
        with self.workdps():
            return mpf(10) ** (-self.target_digits)

    def doubled(self) -> "PrecisionContext":
        """Context for the second rung of the two-precision ladder."""
        return PrecisionContext(2 * self.target_digits, self.guard_digits)

    def bumped(self, extra: int) -> "PrecisionContext":
        return PrecisionContext(self.target_digits, self.guard_digits + extra)


DEFAULT_CTX = PrecisionContext()
