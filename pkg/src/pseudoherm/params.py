"""Physical parameters of the spin-oscillator model.

Units: hbar = 1 throughout, so ``hbar_omega`` is the oscillator quantum and
``eps_energy`` the Zeeman splitting (twice the magnetic coupling), both plain
energies.  The rotating-wave coupling ``rho`` enters anti-Hermitianly, which
is the whole point of the model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """Immutable parameter bundle (hbar_omega, eps_energy, rho).

    ``hbar_omega`` must be positive and ``rho`` non-negative.  ``eps_energy``
    is unrestricted at construction; operations that need the real-spectrum
    window (hbar_omega - eps_energy >= 2*rho*sqrt(n+1)) validate it at the
    point of use and raise a reality-domain error there.
    """

    hbar_omega: float
    eps_energy: float
    rho: float

    def __post_init__(self):
        for name in ("hbar_omega", "eps_energy", "rho"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ValueError(f"{name} must be a finite real number, got {value!r}")
        if self.hbar_omega <= 0:
            raise ValueError(f"hbar_omega must be positive, got {self.hbar_omega}")
        if self.rho < 0:
            raise ValueError(f"rho must be non-negative, got {self.rho}")

    @property
    def detuning(self) -> float:
        """The energy difference hbar_omega - eps_energy controlling reality."""
        return self.hbar_omega - self.eps_energy
