"""Truncated oscillator-spin product space and the full Hamiltonian.

Basis ordering is Fock-major with spin interleaved: index = 2n + s where
s = 0 for m_s = +1/2 and s = 1 for m_s = -1/2.  Operators are then literal
Kronecker products kron(fock_part, spin_part), which keeps every builder a
one-liner and makes the block structure visible by inspection.

The model Hamiltonian

    H = (eps/2) sigma_z + w a^dag a + rho (sigma_+ a - sigma_- a^dag)

is not Hermitian (the coupling is anti-Hermitian) but is pseudo-Hermitian
under two independent witnesses: oscillator parity (-1)^(a^dag a) and
sigma_z.  Both conjugations flip the sign of every coupling entry, and the
couplings truncate in pairs, so O H O^-1 = H^dag holds exactly on the
truncated space as well; the residual restricted below the top Fock level is
reported anyway as the conservative contract.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .blocks import block_discriminant
from .linalg import exp_series, require_finite
from .params import ModelParams

__all__ = [
    "DEFAULT_N_MAX",
    "FockSpinBasis",
    "lowering_operator",
    "number_operator",
    "parity_operator",
    "sigma_z_operator",
    "build_full_hamiltonian",
    "pseudo_hermiticity_residual",
    "SpectrumLine",
    "full_spectrum",
    "evolve_full",
]

#: Default oscillator cutoff: keeps Fock levels 0..31 (64 total states).
DEFAULT_N_MAX = 31

SPIN_UP = 0.5
SPIN_DOWN = -0.5

_SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)
_SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)


@dataclass(frozen=True)
class FockSpinBasis:
    """Ordered basis |n, m_s> with n = 0..n_max and m_s in {+1/2, -1/2}."""

    n_max: int = DEFAULT_N_MAX

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError(f"n_max must be >= 1, got {self.n_max}")

    @property
    def dimension(self) -> int:
        return 2 * (self.n_max + 1)

    def index(self, n: int, m_s: float) -> int:
        """Flat index of |n, m_s>."""
        if not 0 <= n <= self.n_max:
            raise ValueError(f"Fock index {n} outside 0..{self.n_max}")
        if m_s not in (SPIN_UP, SPIN_DOWN):
            raise ValueError(f"m_s must be +0.5 or -0.5, got {m_s}")
        return 2 * n + (0 if m_s == SPIN_UP else 1)

    def labels(self) -> list[str]:
        out = []
        for n in range(self.n_max + 1):
            out.append(f"|{n},+1/2>")
            out.append(f"|{n},-1/2>")
        return out

    def ground_state(self) -> np.ndarray:
        """|0, -1/2>: the decoupled eigenstate with eigenvalue -eps/2."""
        vec = np.zeros(self.dimension, dtype=complex)
        vec[self.index(0, SPIN_DOWN)] = 1.0
        return vec


def _fock_lowering(n_max: int) -> np.ndarray:
    a = np.zeros((n_max + 1, n_max + 1))
    for n in range(1, n_max + 1):
        a[n - 1, n] = math.sqrt(n)
    return a


def lowering_operator(basis: FockSpinBasis) -> np.ndarray:
    """a tensor I_spin, with a|n> = sqrt(n)|n-1> and the top column truncated."""
    return np.kron(_fock_lowering(basis.n_max), np.eye(2)).astype(complex)


def number_operator(basis: FockSpinBasis) -> np.ndarray:
    """a^dag a tensor I_spin (diagonal)."""
    return np.kron(np.diag(np.arange(basis.n_max + 1, dtype=float)), np.eye(2)).astype(
        complex
    )


def parity_operator(basis: FockSpinBasis) -> np.ndarray:
    """Oscillator parity (-1)^(a^dag a) tensor I_spin.  An involution."""
    signs = np.array([(-1.0) ** n for n in range(basis.n_max + 1)])
    return np.kron(np.diag(signs), np.eye(2)).astype(complex)


def sigma_z_operator(basis: FockSpinBasis) -> np.ndarray:
    """I_fock tensor sigma_z.  Also an involution."""
    return np.kron(np.eye(basis.n_max + 1), _SIGMA_Z).astype(complex)


def build_full_hamiltonian(params: ModelParams, basis: FockSpinBasis) -> np.ndarray:
    """Dense Hamiltonian on the truncated product space.

    Assembled from operator Kronecker products, not from per-block data, so
    it provides an independent route against which the block decomposition
    is tested.
    """
    n_fock = basis.n_max + 1
    a = _fock_lowering(basis.n_max)
    coupling = np.kron(a, _SIGMA_PLUS)
    h = (
        params.eps_energy / 2.0 * np.kron(np.eye(n_fock), _SIGMA_Z)
        + params.hbar_omega * np.kron(a.T @ a, np.eye(2))
        + params.rho * (coupling - coupling.conj().T)
    )
    return h.astype(complex)


def pseudo_hermiticity_residual(
    params: ModelParams, basis: FockSpinBasis, witness: str = "parity"
) -> float:
    """max |O H O^-1 - H^dag| over rows and columns with Fock index < n_max.

    ``witness`` selects the conjugating operator: "parity" or "sigma_z".
    Both are involutions (O^-1 = O).  The top Fock level is excluded as the
    conservative choice for truncated ladder operators, although for this
    coupling the relation holds exactly on the whole truncated space (the
    a and a^dag entries are dropped in pairs).
    """
    if witness == "parity":
        op = parity_operator(basis)
    elif witness == "sigma_z":
        op = sigma_z_operator(basis)
    else:
        raise ValueError(f"witness must be 'parity' or 'sigma_z', got {witness!r}")
    h = build_full_hamiltonian(params, basis)
    residual = op @ h @ op - h.conj().T
    keep = 2 * basis.n_max  # indices 0..2*n_max-1 have Fock index < n_max
    return float(np.abs(residual[:keep, :keep]).max())


@dataclass(frozen=True)
class SpectrumLine:
    """One labeled point of the analytic spectrum."""

    label: str
    value: complex


def full_spectrum(params: ModelParams, basis: FockSpinBasis) -> list[SpectrumLine]:
    """Spectrum assembled analytically: ground value plus all block pairs.

    No dense eigensolve.  Blocks outside the reality window contribute their
    complex-conjugate pair (principal-branch square root of the negative
    discriminant).  The truncated matrix additionally carries the artifact
    eigenvalue eps/2 + n_max*w from the orphaned top state |n_max, up>; that
    value belongs to the truncation, not the model, and is excluded here.
    """
    lines = [SpectrumLine("ground", complex(-params.eps_energy / 2.0))]
    for n in range(basis.n_max):
        disc = block_discriminant(n, params)
        root = complex(math.sqrt(disc)) if disc >= 0 else 1j * math.sqrt(-disc)
        center = (2 * n + 1) * params.hbar_omega / 2.0
        lines.append(SpectrumLine(f"n={n},+", center + root / 2.0))
        lines.append(SpectrumLine(f"n={n},-", center - root / 2.0))
    return lines


def evolve_full(
    state, t: float, params: ModelParams, basis: FockSpinBasis
) -> np.ndarray:
    """exp(-i H t) applied to ``state`` via the series exponential.

    The dimension exceeds 2, so the analytic Pauli route does not apply; the
    scaling-and-squaring series carries the evolution.  Non-unitary for
    rho > 0: norms are not preserved.
    """
    vec = require_finite(state, "state")
    if vec.shape != (basis.dimension,):
        raise ValueError(
            f"state must have shape ({basis.dimension},), got {vec.shape}"
        )
    h = build_full_hamiltonian(params, basis)
    return exp_series(h, -1j * t) @ vec
