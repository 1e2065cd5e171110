"""Invariant 2x2 blocks of the spin-oscillator Hamiltonian.

The anti-Hermitian coupling rho*(sigma_+ a - sigma_- a^dag) leaves every
subspace span{|n, up>, |n+1, down>} invariant, so the full problem splits
into 2x2 blocks

    H_n = [[eps/2 + n w,        rho*sqrt(n+1)],
           [-rho*sqrt(n+1),     -eps/2 + (n+1) w]]        (w = hbar_omega)

plus the decoupled ground state |0, down>.  Each block carries a mixing
angle alpha defined by (w - eps)*sin(alpha) = 2*rho*sqrt(n+1); its spectrum
is real exactly while alpha is real (sin(alpha) <= 1) and the two
eigenvectors coalesce at alpha = pi/2 — the exceptional point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RealityDomainError
from .linalg import eig_2x2
from .params import ModelParams

__all__ = [
    "block_hamiltonian",
    "block_discriminant",
    "reality_condition",
    "block_eigenvalues",
    "alpha_of",
    "coupling_for_alpha",
    "BlockEigenvectors",
    "block_eigenvectors",
    "adjoint_block_eigenvectors",
    "coalescence_measure",
    "BlockSystem",
]

#: Angular distance from pi/2 below which eigenvectors count as coalesced.
#: Matches the eigensolver's defect-angle tolerance: the principal angle
#: between the two block eigenvectors is exactly pi/2 - alpha.
COALESCENCE_ANGLE_TOL = 1e-8


def block_hamiltonian(n: int, params: ModelParams) -> np.ndarray:
    """The 2x2 block acting on span{|n, up>, |n+1, down>}."""
    if n < 0:
        raise ValueError(f"block index n must be >= 0, got {n}")
    w, e, r = params.hbar_omega, params.eps_energy, params.rho
    g = r * math.sqrt(n + 1)
    return np.array(
        [[e / 2 + n * w, g], [-g, -e / 2 + (n + 1) * w]], dtype=complex
    )


def block_discriminant(n: int, params: ModelParams) -> float:
    """(w - eps)**2 - 4*rho**2*(n+1); non-negative iff the spectrum is real."""
    return params.detuning**2 - 4.0 * params.rho**2 * (n + 1)


def reality_condition(n: int, params: ModelParams) -> bool:
    """True when (hbar_omega - eps_energy) >= 2*rho*sqrt(n+1), boundary included."""
    return params.detuning >= 2.0 * params.rho * math.sqrt(n + 1)


def _reality_error(n: int, params: ModelParams) -> RealityDomainError:
    lhs = params.detuning
    rhs = 2.0 * params.rho * math.sqrt(n + 1)
    return RealityDomainError(
        f"real-spectrum condition violated for block n={n}: "
        f"hbar_omega - eps_energy = {lhs:.6g} < 2*rho*sqrt(n+1) = {rhs:.6g}",
        discriminant=block_discriminant(n, params),
    )


def block_eigenvalues(n: int, params: ModelParams) -> tuple[float, float]:
    """Closed-form (lambda_plus, lambda_minus) of the n-th block.

    lambda_pm = ((2n+1)*w  +/-  sqrt((w-eps)^2 - 4 rho^2 (n+1))) / 2.

    Raises
    ------
    RealityDomainError
        If the discriminant is negative (complex-conjugate pair regime);
        the discriminant value rides along on the exception.
    """
    disc = block_discriminant(n, params)
    if disc < 0:
        raise _reality_error(n, params)
    center = (2 * n + 1) * params.hbar_omega / 2.0
    half_gap = math.sqrt(disc) / 2.0
    return center + half_gap, center - half_gap


def alpha_of(n: int, params: ModelParams) -> float:
    """Mixing angle alpha solving (w - eps)*sin(alpha) = 2*rho*sqrt(n+1).

    Requires hbar_omega > eps_energy (otherwise no angle exists for rho > 0)
    and a coupling inside the reality window; the boundary sin(alpha) = 1
    maps to the exceptional point alpha = pi/2.
    """
    if params.detuning <= 0:
        raise RealityDomainError(
            "alpha undefined: requires hbar_omega > eps_energy, got "
            f"detuning {params.detuning:.6g}"
        )
    argument = 2.0 * params.rho * math.sqrt(n + 1) / params.detuning
    if argument > 1.0:
        raise _reality_error(n, params)
    return math.asin(argument)


def coupling_for_alpha(
    alpha: float, n: int = 0, *, hbar_omega: float = 1.0, eps_energy: float = 0.0
) -> ModelParams:
    """Parameters realizing a requested block mixing angle.

    Inverts alpha_of at fixed (hbar_omega, eps_energy) by choosing
    rho = (hbar_omega - eps_energy)*sin(alpha) / (2*sqrt(n+1)).
    """
    if not 0.0 <= alpha <= math.pi / 2:
        raise ValueError(f"alpha must lie in [0, pi/2], got {alpha}")
    detuning = hbar_omega - eps_energy
    if detuning <= 0:
        raise RealityDomainError(
            f"requires hbar_omega > eps_energy, got detuning {detuning:.6g}"
        )
    rho = detuning * math.sin(alpha) / (2.0 * math.sqrt(n + 1))
    return ModelParams(hbar_omega=hbar_omega, eps_energy=eps_energy, rho=rho)


@dataclass(frozen=True)
class BlockEigenvectors:
    """Right eigenvector pair of a block (or of its adjoint).

    ``coalesced`` is set when alpha is within COALESCENCE_ANGLE_TOL of pi/2,
    where both directions merge into a single ray and the pair below is no
    longer linearly independent.
    """

    plus: np.ndarray
    minus: np.ndarray
    coalesced: bool


def block_eigenvectors(n: int, params: ModelParams) -> BlockEigenvectors:
    """Eigenvectors psi_plus = (sin a/2, cos a/2), psi_minus = (cos a/2, sin a/2).

    psi_plus belongs to lambda_plus and psi_minus to lambda_minus.  Both are
    returned unit-norm in the Dirac sense (they already are: sin^2 + cos^2).
    Outside the reality window this raises the same domain error as alpha_of.
    """
    alpha = alpha_of(n, params)
    half = alpha / 2.0
    plus = np.array([math.sin(half), math.cos(half)], dtype=complex)
    minus = np.array([math.cos(half), math.sin(half)], dtype=complex)
    return BlockEigenvectors(
        plus=plus, minus=minus, coalesced=(math.pi / 2 - alpha) < COALESCENCE_ANGLE_TOL
    )


def adjoint_block_eigenvectors(n: int, params: ModelParams) -> BlockEigenvectors:
    """Eigenvectors of the adjoint block H_n^dag (= H_n with rho -> -rho).

    phi_plus = (cos a/2, -sin a/2) and phi_minus = (-sin a/2, cos a/2).
    Labels track the Dirac-orthogonality partner: <phi_plus, psi_plus> = 0
    and <phi_minus, psi_minus> = 0, so phi_plus actually solves
    H^dag phi = lambda_minus phi and phi_minus solves H^dag phi =
    lambda_plus phi, with biorthogonal pairings <phi_plus, psi_minus> =
    <phi_minus, psi_plus> = -/+ ... = cos(alpha) up to sign.  The metric
    construction sums both outer products, so the labeling convention does
    not affect downstream results.
    """
    alpha = alpha_of(n, params)
    half = alpha / 2.0
    plus = np.array([math.cos(half), -math.sin(half)], dtype=complex)
    minus = np.array([-math.sin(half), math.cos(half)], dtype=complex)
    return BlockEigenvectors(
        plus=plus, minus=minus, coalesced=(math.pi / 2 - alpha) < COALESCENCE_ANGLE_TOL
    )


def coalescence_measure(n: int, params: ModelParams) -> float:
    """Principal angle (radians) between the two block eigenvectors.

    Analytically equal to pi/2 - alpha: it shrinks linearly as the coupling
    approaches the exceptional point and vanishes exactly at coalescence.
    """
    vecs = block_eigenvectors(n, params)
    overlap = abs(np.vdot(vecs.plus, vecs.minus))
    return math.acos(min(1.0, overlap))


@dataclass(frozen=True)
class BlockSystem:
    """Everything about one invariant block, assembled once."""

    n: int
    params: ModelParams
    matrix: np.ndarray
    alpha: float
    lambda_plus: float
    lambda_minus: float
    at_exceptional_point: bool

    @classmethod
    def build(cls, n: int, params: ModelParams) -> "BlockSystem":
        lam_p, lam_m = block_eigenvalues(n, params)
        alpha = alpha_of(n, params)
        return cls(
            n=n,
            params=params,
            matrix=block_hamiltonian(n, params),
            alpha=alpha,
            lambda_plus=lam_p,
            lambda_minus=lam_m,
            at_exceptional_point=(math.pi / 2 - alpha) < COALESCENCE_ANGLE_TOL,
        )

    def generic_eigensystem(self):
        """Cross-check route: the generic 2x2 eigensolver on this block."""
        return eig_2x2(self.matrix)
