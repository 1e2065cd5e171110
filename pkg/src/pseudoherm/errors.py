"""Typed errors shared across the package.

Everything derives from ValueError so that generic callers can keep a single
except clause, while scans and the CLI can branch on the precise failure mode
(domain violation vs. degenerate metric vs. malformed input).
"""

from __future__ import annotations


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes for the requested operation."""


class NonFiniteInputError(ValueError):
    """A public operation received NaN or Inf components."""


class RealityDomainError(ValueError):
    """The coupling is too strong for a real block spectrum.

    Raised when (hbar_omega - eps_energy) < 2*rho*sqrt(n+1).  The offending
    discriminant (hbar_omega - eps_energy)**2 - 4*rho**2*(n+1) is attached so
    diagnostics can name the violated inequality.
    """

    def __init__(self, message: str, discriminant: float | None = None):
        super().__init__(message)
        self.discriminant = discriminant


class DegenerateNormError(ValueError):
    """A vector has zero or negative squared norm under the active metric.

    This is the signature of the exceptional point: the metric loses rank and
    the coalesced eigenvector becomes a null direction.  Scans catch this to
    mark the singular row instead of propagating infinities.
    """


class SingularPointError(ValueError):
    """A closed-form expression was evaluated at a pole of its denominator."""
