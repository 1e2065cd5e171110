"""Numerical toolkit for a pseudo-Hermitian spin-oscillator model.

The model couples a spin-1/2 to a harmonic oscillator through an
anti-Hermitian rotating-wave term.  Its Hamiltonian is not Hermitian, yet
carries a real spectrum on the unbroken side of an exceptional point, and a
positive metric operator eta restores a genuine inner product there.  The
package computes the invariant-block eigensystems, the metric (spectral and
closed-form routes), the entangled candidate states whose eta-overlap can be
tuned to zero — single-shot discrimination of nearly parallel states — and
the non-unitary evolution of their Dirac overlap.

Layout: :mod:`~pseudoherm.linalg` (2x2 primitives), :mod:`~pseudoherm.params`
and :mod:`~pseudoherm.blocks` (model and block eigensystems),
:mod:`~pseudoherm.fockspace` (truncated full space),
:mod:`~pseudoherm.metric`, :mod:`~pseudoherm.states`,
:mod:`~pseudoherm.evolution`, and the :mod:`~pseudoherm.cli` front end.
"""

from .blocks import (
    BlockSystem,
    alpha_of,
    block_eigenvalues,
    block_eigenvectors,
    block_hamiltonian,
    coalescence_measure,
    coupling_for_alpha,
    reality_condition,
)
from .errors import (
    DegenerateNormError,
    DimensionMismatchError,
    NonFiniteInputError,
    RealityDomainError,
    SingularPointError,
)
from .evolution import (
    EvolutionTrace,
    ParamsFamily,
    ScanRow,
    effective_hamiltonian,
    find_orthogonality_time,
    gram_kernel,
    kernel_closed_form,
    overlap_trajectory,
    real_part_crossing_time,
    scan_alpha,
    strict_orthogonality_alpha,
)
from .fockspace import (
    DEFAULT_N_MAX,
    FockSpinBasis,
    build_full_hamiltonian,
    evolve_full,
    full_spectrum,
    pseudo_hermiticity_residual,
)
from .linalg import eig_2x2, exp_2x2, exp_series, pauli_decompose
from .metric import (
    MetricOperator,
    eta_inner,
    eta_inner_normalized,
    eta_normalize,
    metric_closed_form,
    metric_eigenvalues,
    metric_full_space,
    metric_spectral,
    quasi_hermiticity_residual,
)
from .params import ModelParams
from .states import (
    ThetaEps,
    completeness_report,
    discrimination_alpha,
    discrimination_metric,
    eta_bra,
    eta_bra_unit,
    eta_overlap_12,
    eta_overlap_34,
    make_psi_pair_12,
    make_psi_pair_34,
    projector,
    projector_coefficient_family,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # params & blocks
    "ModelParams",
    "BlockSystem",
    "block_hamiltonian",
    "block_eigenvalues",
    "block_eigenvectors",
    "alpha_of",
    "coupling_for_alpha",
    "reality_condition",
    "coalescence_measure",
    # linalg
    "pauli_decompose",
    "exp_2x2",
    "exp_series",
    "eig_2x2",
    # fockspace
    "DEFAULT_N_MAX",
    "FockSpinBasis",
    "build_full_hamiltonian",
    "pseudo_hermiticity_residual",
    "full_spectrum",
    "evolve_full",
    # metric
    "MetricOperator",
    "metric_closed_form",
    "metric_spectral",
    "metric_eigenvalues",
    "metric_full_space",
    "eta_inner",
    "eta_inner_normalized",
    "eta_normalize",
    "quasi_hermiticity_residual",
    # states
    "ThetaEps",
    "make_psi_pair_12",
    "make_psi_pair_34",
    "discrimination_alpha",
    "discrimination_metric",
    "eta_overlap_12",
    "eta_overlap_34",
    "eta_bra",
    "eta_bra_unit",
    "projector",
    "projector_coefficient_family",
    "completeness_report",
    # evolution
    "effective_hamiltonian",
    "gram_kernel",
    "kernel_closed_form",
    "overlap_trajectory",
    "EvolutionTrace",
    "find_orthogonality_time",
    "real_part_crossing_time",
    "strict_orthogonality_alpha",
    "ParamsFamily",
    "ScanRow",
    "scan_alpha",
    # errors
    "DimensionMismatchError",
    "NonFiniteInputError",
    "RealityDomainError",
    "DegenerateNormError",
    "SingularPointError",
]
