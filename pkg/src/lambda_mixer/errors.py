"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One invariant violation: which field, what value, which constraint."""

    field: str
    value: object
    constraint: str

    def __str__(self) -> str:
        return f"{self.field} = {self.value!r}: {self.constraint}"


class LambdaMixerError(Exception):
    """Base class for all package errors."""


class ValidationError(LambdaMixerError):
    """One or more domain invariants violated; carries the full list."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class DomainError(LambdaMixerError, ValueError):
    """Operation called outside its mathematical domain (e.g. zero absorber depth)."""


class SingularityError(LambdaMixerError, ArithmeticError):
    """A denominator of an eliminated-coherence expression vanished."""


class IntegrationError(LambdaMixerError):
    """Adaptive integrator failed; ``last_zeta`` is the last good position."""

    def __init__(self, message: str, last_zeta: float):
        self.last_zeta = last_zeta
        super().__init__(f"{message} (last good zeta = {last_zeta:.6g})")


class InfeasibleTargetError(DomainError):
    """Requested absorber depth exceeds what the medium can provide."""
