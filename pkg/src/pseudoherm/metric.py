"""Metric operators restoring Hermiticity block by block.

Each invariant block has a positive (for alpha < pi/2) metric

    eta(alpha) = [[1, -sin(alpha)], [-sin(alpha), 1]]

built spectrally from the adjoint eigenvectors, eta = sum_k phi_k phi_k^dag.
It intertwines the block with its adjoint, eta H = H^dag eta, turning
<u, eta v> into a genuine inner product on the unbroken side of the
exceptional point.  At alpha = pi/2 the smaller eigenvalue 1 - sin(alpha)
hits zero: the metric degenerates together with the eigenvector coalescence,
and eta-normalization of the coalesced direction becomes impossible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import blocks
from .errors import DegenerateNormError, DimensionMismatchError
from .fockspace import FockSpinBasis, build_full_hamiltonian
from .linalg import require_finite
from .params import ModelParams

__all__ = [
    "MetricOperator",
    "metric_closed_form",
    "metric_spectral",
    "metric_eigenvalues",
    "eta_inner",
    "eta_inner_normalized",
    "eta_normalize",
    "quasi_hermiticity_residual",
    "metric_full_space",
    "full_space_quasi_hermiticity_residual",
]


@dataclass(frozen=True)
class MetricOperator:
    """A block metric together with the mixing angle that generated it."""

    alpha: float
    matrix: np.ndarray

    @property
    def is_positive_definite(self) -> bool:
        return self.alpha < math.pi / 2

    @property
    def is_singular(self) -> bool:
        """Degenerate exactly at the exceptional point."""
        return math.sin(self.alpha) >= 1.0


def metric_closed_form(alpha: float) -> MetricOperator:
    """eta(alpha) = [[1, -sin a], [-sin a, 1]] for alpha in [0, pi/2]."""
    if not 0.0 <= alpha <= math.pi / 2:
        raise ValueError(f"alpha must lie in [0, pi/2], got {alpha}")
    s = math.sin(alpha)
    return MetricOperator(
        alpha=alpha, matrix=np.array([[1.0, -s], [-s, 1.0]], dtype=complex)
    )


def metric_spectral(n: int, params: ModelParams) -> MetricOperator:
    """Metric from the spectral sum over adjoint eigenvectors.

    eta = phi_plus phi_plus^dag + phi_minus phi_minus^dag.  Agrees with the
    closed form to rounding; kept as the independent construction route.
    At the exceptional point the two rays coincide and the sum degenerates
    to the (singular) closed form, which is returned with no error — only
    normalization against it fails.
    """
    vecs = blocks.adjoint_block_eigenvectors(n, params)
    eta = np.outer(vecs.plus, vecs.plus.conj()) + np.outer(
        vecs.minus, vecs.minus.conj()
    )
    return MetricOperator(alpha=blocks.alpha_of(n, params), matrix=eta)


def metric_eigenvalues(eta: MetricOperator) -> tuple[float, float]:
    """(1 - sin alpha, 1 + sin alpha), ascending."""
    s = math.sin(eta.alpha)
    return 1.0 - s, 1.0 + s


def _as_metric_matrix(eta) -> np.ndarray:
    matrix = eta.matrix if isinstance(eta, MetricOperator) else np.asarray(eta)
    return require_finite(matrix, "eta")


def eta_inner(u, v, eta) -> complex:
    """Indefinite-metric inner product u^dag eta v (antilinear in u)."""
    uu = require_finite(u, "u")
    vv = require_finite(v, "v")
    matrix = _as_metric_matrix(eta)
    if uu.shape != vv.shape or matrix.shape != (uu.shape[0], uu.shape[0]):
        raise DimensionMismatchError(
            f"incompatible shapes: u {uu.shape}, v {vv.shape}, eta {matrix.shape}"
        )
    return complex(uu.conj() @ matrix @ vv)


def eta_inner_normalized(u, v, eta) -> complex:
    """eta-inner product of the eta-normalized states.

    Raises DegenerateNormError if either argument has non-positive squared
    eta-norm (the exceptional-point direction).
    """
    nu = eta_inner(u, u, eta).real
    nv = eta_inner(v, v, eta).real
    if nu <= 0 or nv <= 0:
        raise DegenerateNormError(
            f"eta-norms must be positive for normalization, got {nu:.6g}, {nv:.6g}"
        )
    return eta_inner(u, v, eta) / math.sqrt(nu * nv)


def eta_normalize(v, eta) -> np.ndarray:
    """Scale v to unit eta-norm; degenerate directions raise."""
    vv = require_finite(v, "v")
    norm_sq = eta_inner(vv, vv, eta).real
    if norm_sq <= 0:
        raise DegenerateNormError(
            f"cannot eta-normalize: squared eta-norm {norm_sq:.6g} is not positive"
        )
    return vv / math.sqrt(norm_sq)


def quasi_hermiticity_residual(n: int, params: ModelParams) -> float:
    """max |eta H - H^dag eta| for one block with its spectral metric."""
    h = blocks.block_hamiltonian(n, params)
    eta = metric_spectral(n, params).matrix
    return float(np.abs(eta @ h - h.conj().T @ eta).max())


def metric_full_space(params: ModelParams, basis: FockSpinBasis) -> np.ndarray:
    """Composition helper: block-diagonal metric on the whole truncated space.

    Places eta(alpha_n) on each invariant block (with its own mixing angle)
    and 1 on the two decoupled directions: the ground state |0, down> and the
    truncation orphan |n_max, up>.  Requires every block n < n_max to sit
    inside the reality window, i.e. 2*rho*sqrt(n_max) <= hbar_omega -
    eps_energy; otherwise the per-block alpha does not exist and the
    underlying reality-domain error propagates.

    The result is real-symmetric, positive-definite away from exceptional
    points, and satisfies eta H = H^dag eta on the full truncated space.
    """
    dim = basis.dimension
    eta = np.zeros((dim, dim), dtype=complex)
    eta[basis.index(0, -0.5), basis.index(0, -0.5)] = 1.0
    orphan = basis.index(basis.n_max, 0.5)
    eta[orphan, orphan] = 1.0
    for n in range(basis.n_max):
        s = math.sin(blocks.alpha_of(n, params))
        i = basis.index(n, 0.5)
        j = basis.index(n + 1, -0.5)
        eta[i, i] = 1.0
        eta[j, j] = 1.0
        eta[i, j] = -s
        eta[j, i] = -s
    return eta


def full_space_quasi_hermiticity_residual(
    params: ModelParams, basis: FockSpinBasis
) -> float:
    """max |eta_full H - H^dag eta_full| on the truncated space."""
    h = build_full_hamiltonian(params, basis)
    eta = metric_full_space(params, basis)
    return float(np.abs(eta @ h - h.conj().T @ eta).max())
