"""Small complex linear algebra kernel for 2x2 non-Hermitian problems.

Everything downstream (block eigensystems, metric operators, time evolution)
reduces to dense complex 2x2 matrices, so this module provides the three
primitives those layers share:

* a Pauli-basis decomposition  M = c0*I + m . sigma,
* an analytic matrix exponential exp(s*M) built on that decomposition,
* a scaling-and-squaring Taylor exponential that serves as the independent
  cross-check for the analytic route (it never consults the Pauli form), and
* a closed-form 2x2 eigensolver that reports defectiveness instead of
  fabricating an eigenbasis at a coalescence.

The exponentials deliberately form a dual route: tests drive both against each
other (and against scipy in the test suite) rather than trusting either alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatchError, NonFiniteInputError

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "IDENTITY_2",
    "PauliDecomposition",
    "pauli_decompose",
    "pauli_recompose",
    "exp_2x2",
    "exp_series",
    "Eigensystem2",
    "eig_2x2",
]

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

#: Taylor terms below this max-abs size stop the series exponential.
SERIES_TERM_CUTOFF = 1e-18
#: Scaling target for the series exponential (max row sum after scaling).
SERIES_SCALE_NORM = 0.5
#: Relative eigenvalue gap below which a 2x2 matrix *may* be defective.
DEFECT_GAP_RTOL = 1e-10
#: Eigenvector angle (radians) below which near-equal eigenvalues are
#: declared a genuine coalescence rather than an accidental degeneracy.
DEFECT_ANGLE_TOL = 1e-8


def require_finite(values, name: str) -> np.ndarray:
    """Return ``values`` as a complex ndarray, rejecting NaN/Inf entries."""
    arr = np.asarray(values, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise NonFiniteInputError(f"{name} contains NaN or Inf components")
    return arr


def _require_2x2(values, name: str) -> np.ndarray:
    arr = require_finite(values, name)
    if arr.shape != (2, 2):
        raise DimensionMismatchError(f"{name} must be 2x2, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class PauliDecomposition:
    """Coefficients of M = scalar*I + vector . (sigma_x, sigma_y, sigma_z)."""

    scalar: complex
    vector: tuple[complex, complex, complex]

    @property
    def vector_square(self) -> complex:
        """Unconjugated self-product m.m (complex; not a Euclidean norm)."""
        x, y, z = self.vector
        return x * x + y * y + z * z


def pauli_decompose(matrix) -> PauliDecomposition:
    """Decompose a complex 2x2 matrix over {I, sigma_x, sigma_y, sigma_z}.

    The coefficients are the half-traces c0 = tr(M)/2, m_k = tr(sigma_k M)/2,
    written out entrywise so the round trip is exact to rounding.
    """
    m = _require_2x2(matrix, "matrix")
    a, b = m[0, 0], m[0, 1]
    c, d = m[1, 0], m[1, 1]
    return PauliDecomposition(
        scalar=(a + d) / 2,
        vector=((b + c) / 2, 1j * (b - c) / 2, (a - d) / 2),
    )


def pauli_recompose(decomposition: PauliDecomposition) -> np.ndarray:
    """Inverse of :func:`pauli_decompose`."""
    x, y, z = decomposition.vector
    c0 = decomposition.scalar
    return np.array([[c0 + z, x - 1j * y], [x + 1j * y, c0 - z]], dtype=complex)


def exp_2x2(matrix, s: complex = 1.0) -> np.ndarray:
    """Analytic exp(s*M) for complex 2x2 M via the Pauli decomposition.

    With M = c0*I + m.sigma and b**2 = m.m (principal branch), the identity

        exp(s*M) = exp(s*c0) * [cosh(s*b)*I + sinh(s*b)/b * (m.sigma)]

    holds for every branch choice because cosh and sinh(x)/x are even.  When
    b == 0 (including nilpotent m.sigma) the limit exp(s*c0)*(I + s*m.sigma)
    is used.  Callers keep |s|*norm(M) modest (<= 50); there is no overflow
    guard beyond IEEE semantics.
    """
    m = _require_2x2(matrix, "matrix")
    s = complex(s)
    dec = pauli_decompose(m)
    traceless = m - dec.scalar * IDENTITY_2
    b = np.sqrt(dec.vector_square)
    phase = np.exp(s * dec.scalar)
    if b == 0:
        return phase * (IDENTITY_2 + s * traceless)
    return phase * (np.cosh(s * b) * IDENTITY_2 + (np.sinh(s * b) / b) * traceless)


def exp_series(matrix, s: complex = 1.0) -> np.ndarray:
    """Taylor-series exp(s*M) with scaling and squaring, any square size.

    The argument is halved until its max-row-sum norm is at most 0.5, the
    series is summed until the next term falls below 1e-18 in max-abs, and
    the result is squared back up.  Slow and dimension-agnostic on purpose:
    this is the oracle the analytic routes are checked against.
    """
    m = require_finite(matrix, "matrix")
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"matrix must be square, got shape {m.shape}")
    t = complex(s) * m
    norm = float(np.abs(t).sum(axis=1).max())
    squarings = 0
    if norm > SERIES_SCALE_NORM:
        squarings = int(math.ceil(math.log2(norm / SERIES_SCALE_NORM)))
        t = t / (2.0**squarings)
    dim = m.shape[0]
    total = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    k = 1
    while True:
        term = term @ t / k
        total = total + term
        if float(np.abs(term).max()) < SERIES_TERM_CUTOFF:
            break
        k += 1
        if k > 200:  # unreachable for scaled arguments; guards bad input
            raise ArithmeticError("series exponential failed to converge")
    for _ in range(squarings):
        total = total @ total
    return total


@dataclass(frozen=True)
class Eigensystem2:
    """Eigendecomposition of a 2x2 matrix with coalescence bookkeeping.

    ``values`` pairs with ``vectors`` index by index; vectors have unit
    Euclidean norm.  When ``defective`` is set the matrix has (numerically)
    one eigendirection and both vector slots hold that single direction.
    """

    values: tuple[complex, complex]
    vectors: tuple[np.ndarray, np.ndarray]
    defective: bool

    def residual(self, matrix) -> float:
        m = np.asarray(matrix, dtype=complex)
        return max(
            float(np.linalg.norm(m @ v - lam * v))
            for lam, v in zip(self.values, self.vectors)
        )


def _eigvec_2x2(m: np.ndarray, lam: complex, fallback: int) -> np.ndarray:
    a, b = m[0, 0], m[0, 1]
    c, d = m[1, 0], m[1, 1]
    cand1 = np.array([b, lam - a], dtype=complex)
    cand2 = np.array([lam - d, c], dtype=complex)
    n1, n2 = np.linalg.norm(cand1), np.linalg.norm(cand2)
    scale = max(float(np.abs(m).max()), float(abs(lam)), 1.0)
    if max(n1, n2) <= 1e-14 * scale:
        # Scalar matrix: every direction is an eigendirection.
        return np.eye(2, dtype=complex)[fallback]
    v = cand1 if n1 >= n2 else cand2
    return v / np.linalg.norm(v)


def eig_2x2(matrix) -> Eigensystem2:
    """Closed-form eigensystem of a complex 2x2 matrix.

    Eigenvalues come from the quadratic formula with a principal-branch
    square root.  Defectiveness is declared only when the eigenvalue gap is
    below ``DEFECT_GAP_RTOL * ||M||_F`` *and* the two computed eigenvectors
    are parallel to within ``DEFECT_ANGLE_TOL`` radians; equal eigenvalues
    with an intact eigenbasis (e.g. the identity) are not flagged.
    """
    m = _require_2x2(matrix, "matrix")
    tr = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    root = np.sqrt(tr * tr - 4.0 * det + 0j)
    lam1 = (tr + root) / 2
    lam2 = (tr - root) / 2
    v1 = _eigvec_2x2(m, lam1, 0)
    v2 = _eigvec_2x2(m, lam2, 1)
    norm = float(np.linalg.norm(m))
    gap_small = abs(lam1 - lam2) < DEFECT_GAP_RTOL * max(norm, 1e-300)
    cosang = min(1.0, abs(np.vdot(v1, v2)))
    defective = bool(gap_small and math.acos(cosang) < DEFECT_ANGLE_TOL)
    if defective:
        v2 = v1
    return Eigensystem2(values=(lam1, lam2), vectors=(v1, v2), defective=defective)
