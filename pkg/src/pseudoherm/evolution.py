"""Non-unitary time evolution and the search for an orthogonality time.

The n = 0 block acts as the effective two-level Hamiltonian.  Evolution under
exp(-i H t) is not unitary (H is not Hermitian), so the Dirac overlap of two
evolved states is governed by the Gram kernel

    G(t) = exp(i H^dag t) exp(-i H t),        <psi1(t)|psi2(t)> = psi1^dag G(t) psi2.

G(t) has closed-form entries in terms of the block mixing angle alpha and the
half-gap frequency beta = (hbar_omega - eps_energy) cos(alpha) / 2:

    cos^2(a) G_diag   = cos^2(bt) cos^2(a) + sin^2(bt) (1 + sin^2(a))
    cos^2(a) G_12     = sin(a) [-i sin(2bt) cos(a) - 2 sin^2(bt)]
    cos^2(a) G_21     = sin(a) [+i sin(2bt) cos(a) - 2 sin^2(bt)]

(derived here and cross-checked against the series exponential; a carried
tabulation with a different off-diagonal is kept for auditing, see
:func:`tabulated_scaled_kernel`).

For the standard candidate pair the overlap works out to

    cos^2(a) <psi1(t)|psi2(t)> = cos(e) [cos^2(bt) cos^2(a) + sin^2(bt) (1 + sin^2(a))]
                                 - 2 sin(a) sin^2(bt)
                                 - i sin(a) cos(a) sin(e) sin(2bt)

which is genuinely complex for 0 < a < pi/2.  Exact zeros |overlap| = 0
therefore require real and imaginary parts to vanish together; that happens
only at sin(a) = (1 - sin e)/cos e (see :func:`strict_orthogonality_alpha`),
where the overlap hits zero at beta t = pi/2.  Elsewhere the overlap merely
dips; scans report both the strict orthogonality time and the (less
demanding) first zero crossing of the real part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .blocks import alpha_of, block_hamiltonian, coupling_for_alpha
from .errors import RealityDomainError, SingularPointError
from .linalg import exp_2x2, pauli_decompose
from .params import ModelParams
from .states import ThetaEps, make_psi_pair_12

__all__ = [
    "ORTHOGONALITY_TOL",
    "EffectiveHamiltonian",
    "effective_hamiltonian",
    "gram_kernel",
    "kernel_closed_form",
    "tabulated_scaled_kernel",
    "KernelResiduals",
    "kernel_closed_form_residuals",
    "overlap_closed_form",
    "EvolutionTrace",
    "overlap_trajectory",
    "find_orthogonality_time",
    "real_part_crossing_time",
    "strict_orthogonality_alpha",
    "orthogonality_sin2_tabulated",
    "ParamsFamily",
    "ScanRow",
    "scan_alpha",
]

#: |overlap| at or below this counts as a strict orthogonality event.
ORTHOGONALITY_TOL = 1e-10
#: Sample density for bracketing searches: points per beta-period.
_SAMPLES_PER_PERIOD = 256
#: Bisection interval width target, as a fraction of a beta-period.
_BISECT_REL_TOL = 1e-13
#: Grid minima of |overlap| above this cannot hide a true zero: near a zero
#: the modulus is a linear dip with slope 2 sin(a) sin(e)/cos(a) <= O(1) in
#: beta t, and the grid samples every 2 pi/256 of beta t, so a zero forces a
#: neighboring sample below ~0.006.  Pruning here skips pointless refinement.
_ZERO_CANDIDATE_CEILING = 0.05


@dataclass(frozen=True)
class EffectiveHamiltonian:
    """The n = 0 block promoted to the effective two-level generator.

    ``beta`` is the real half-gap (hbar_omega - eps_energy) cos(alpha) / 2;
    the Pauli form is matrix = (hbar_omega/2) I + sigma . (0, i rho,
    (eps_energy - hbar_omega)/2), so beta^2 = m.m with m the Pauli vector.
    """

    params: ModelParams
    matrix: np.ndarray
    alpha: float
    beta: float

    @property
    def period(self) -> float:
        """One full beta-oscillation 2 pi / beta (inf at the coalescence)."""
        return 2.0 * math.pi / self.beta if self.beta > 0 else math.inf


def effective_hamiltonian(params: ModelParams) -> EffectiveHamiltonian:
    """Build the effective generator, requiring a real (unbroken) spectrum.

    Outside the reality window this propagates the domain error naming the
    violated inequality hbar_omega - eps_energy >= 2*rho (from the n = 0
    mixing angle); the beta^2 >= 0 guard below is a numerical backstop.
    """
    alpha = alpha_of(0, params)
    matrix = block_hamiltonian(0, params)
    vector_square = pauli_decompose(matrix).vector_square
    if vector_square.real < 0:
        raise RealityDomainError(
            "effective Hamiltonian has a broken (complex) spectrum: "
            f"beta^2 = {vector_square.real:.6g} < 0",
            discriminant=4.0 * vector_square.real,
        )
    return EffectiveHamiltonian(
        params=params,
        matrix=matrix,
        alpha=alpha,
        beta=math.sqrt(vector_square.real),
    )


def gram_kernel(t: float, params: ModelParams) -> np.ndarray:
    """G(t) = exp(i H^dag t) exp(-i H t) via the analytic 2x2 exponential.

    The direct product route: no closed-form entries, only the Pauli
    exponential.  Serves as the reference the closed forms are tested
    against.  Works in the broken regime too (entries grow exponentially).
    """
    h = block_hamiltonian(0, params)
    return exp_2x2(h.conj().T, 1j * t) @ exp_2x2(h, -1j * t)


def _scaled_kernel_entries(beta_t, alpha: float):
    """Vectorized derived entries of cos^2(a) G(t); beta_t may be an array."""
    bt = np.asarray(beta_t, dtype=float)
    ca, sa = math.cos(alpha), math.sin(alpha)
    cos2, sin2 = np.cos(bt) ** 2, np.sin(bt) ** 2
    sin_2bt = np.sin(2.0 * bt)
    diag = cos2 * ca**2 + sin2 * (1.0 + sa**2)
    off12 = sa * (-1j * sin_2bt * ca - 2.0 * sin2)
    off21 = sa * (+1j * sin_2bt * ca - 2.0 * sin2)
    return diag, off12, off21


def kernel_closed_form(t: float, params: ModelParams) -> np.ndarray:
    """G(t) from the derived closed-form entries (unbroken regime only)."""
    eff = effective_hamiltonian(params)
    ca = math.cos(eff.alpha)
    if ca == 0.0:
        raise SingularPointError(
            "kernel closed form divides by cos^2(alpha), singular at alpha = pi/2"
        )
    diag, off12, off21 = _scaled_kernel_entries(eff.beta * t, eff.alpha)
    return np.array([[diag, off12], [off21, diag]], dtype=complex) / ca**2


def tabulated_scaled_kernel(t: float, params: ModelParams) -> np.ndarray:
    """cos^2(a) G(t) as tabulated in the carried closed-form reference.

    Diagonal identical to the derived entries.  Off-diagonal as carried:
    sin(2bt) sin(a) (-/+ i cos(a) - sin(bt)), whose real part differs from
    the direct product by an extra cos(bt) factor.  Retained verbatim so the
    disagreement can be measured (see :func:`kernel_closed_form_residuals`)
    instead of silently corrected.
    """
    eff = effective_hamiltonian(params)
    bt = eff.beta * t
    ca, sa = math.cos(eff.alpha), math.sin(eff.alpha)
    diag = math.cos(bt) ** 2 * ca**2 + math.sin(bt) ** 2 * (1.0 + sa**2)
    off12 = math.sin(2.0 * bt) * sa * (-1j * ca - math.sin(bt))
    off21 = math.sin(2.0 * bt) * sa * (+1j * ca - math.sin(bt))
    return np.array([[diag, off12], [off21, diag]], dtype=complex)


@dataclass(frozen=True)
class KernelResiduals:
    """Max-abs disagreement between the product kernel and the tabulation."""

    diagonal: float
    off_diagonal: float


def kernel_closed_form_residuals(t: float, params: ModelParams) -> KernelResiduals:
    """Compare cos^2(a) * gram_kernel(t) against the tabulated entries.

    The diagonal agrees to rounding (contract: <= 1e-10).  The off-diagonal
    residual is reported without a pass threshold; it reaches ~0.05 at
    moderate alpha and t, consistent with the tabulation's extra cos(bt)
    factor being a transcription slip.
    """
    eff = effective_hamiltonian(params)
    scaled = math.cos(eff.alpha) ** 2 * gram_kernel(t, params)
    tab = tabulated_scaled_kernel(t, params)
    diff = np.abs(scaled - tab)
    return KernelResiduals(
        diagonal=float(max(diff[0, 0], diff[1, 1])),
        off_diagonal=float(max(diff[0, 1], diff[1, 0])),
    )


def overlap_closed_form(times, te: ThetaEps, params: ModelParams) -> np.ndarray:
    """Vectorized <psi1(t)|psi2(t)> from the derived kernel entries.

    Exact for arbitrary (theta, eps) pairs, not just the standard
    convention: the kernel entries are closed-form, the states enter as
    plain coefficients.  Cross-checked against :func:`gram_kernel` (and, in
    the tests, against an independent dense exponential).
    """
    eff = effective_hamiltonian(params)
    ca = math.cos(eff.alpha)
    if ca == 0.0:
        raise SingularPointError(
            "overlap closed form divides by cos^2(alpha), singular at alpha = pi/2"
        )
    psi1, psi2 = make_psi_pair_12(te)
    diag, off12, off21 = _scaled_kernel_entries(
        eff.beta * np.asarray(times, dtype=float), eff.alpha
    )
    a1, b1 = psi1.conj()
    a2, b2 = psi2
    return (
        diag * (a1 * a2 + b1 * b2) + off12 * a1 * b2 + off21 * b1 * a2
    ) / ca**2


@dataclass(frozen=True)
class EvolutionTrace:
    """Sampled overlap trajectory plus the strict orthogonality time (if any)."""

    times: np.ndarray
    overlaps: np.ndarray
    t_star: float | None
    overlap_at_t_star: complex | None
    alpha: float
    beta: float
    eps_state: float


def overlap_trajectory(
    te: ThetaEps, params: ModelParams, times: Sequence[float]
) -> EvolutionTrace:
    """Sample the evolved overlap on ``times`` and attach the t* search.

    The strict orthogonality time is searched on [0, max(times)]; None means
    no |overlap| <= ORTHOGONALITY_TOL event in that window.
    """
    t_arr = np.asarray(times, dtype=float)
    if t_arr.ndim != 1 or t_arr.size == 0:
        raise ValueError("times must be a non-empty 1-D sequence")
    if np.any(t_arr < 0):
        raise ValueError("times must be non-negative")
    eff = effective_hamiltonian(params)
    overlaps = overlap_closed_form(t_arr, te, params)
    t_max = float(t_arr.max())
    t_star = find_orthogonality_time(te, params, t_max) if t_max > 0 else None
    return EvolutionTrace(
        times=t_arr,
        overlaps=overlaps,
        t_star=t_star,
        overlap_at_t_star=(
            complex(overlap_closed_form(np.array([t_star]), te, params)[0])
            if t_star is not None
            else None
        ),
        alpha=eff.alpha,
        beta=eff.beta,
        eps_state=te.eps_state,
    )


def _refine_minimum(f, t_lo: float, t_mid: float, t_hi: float, width_tol: float):
    """Golden-section minimization of f on a bracketed interior minimum."""
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    lo, hi = t_lo, t_hi
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > width_tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = f(x2)
    return (lo + hi) / 2.0


def find_orthogonality_time(
    te: ThetaEps,
    params: ModelParams,
    t_max: float,
    overlap_tol: float = ORTHOGONALITY_TOL,
) -> float | None:
    """Earliest t in (0, t_max] with |<psi1(t)|psi2(t)>| <= overlap_tol.

    Strict semantics: the overlap is complex in general, so this demands a
    genuine zero of its modulus, not just a sign change of the real part
    (for that, see :func:`real_part_crossing_time`).  Zeros are isolated
    points at beta t = pi/2 + k pi that exist only on the measure-zero
    parameter set sin(alpha) = (1 - sin eps)/cos eps; the search therefore
    scans |overlap| on a dense grid, golden-sections every local minimum,
    and accepts the earliest refined minimum below tolerance.  The accepted
    time is confirmed against the exponential-product kernel before being
    returned.  Returns None when no minimum reaches tolerance, including the
    Hermitian limit rho -> 0 where the overlap is constant at cos(eps).
    """
    if t_max <= 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    eff = effective_hamiltonian(params)
    if eff.beta == 0.0:
        # alpha = pi/2 with detuning > 0 cannot happen inside the reality
        # window for rho > 0 without tripping effective_hamiltonian; this is
        # the degenerate detuning-free case where nothing oscillates.
        return None
    n_samples = max(
        4096, int(_SAMPLES_PER_PERIOD * t_max / eff.period) + 1
    )
    grid = np.linspace(0.0, t_max, n_samples)
    modulus = np.abs(overlap_closed_form(grid, te, params))

    def f(t: float) -> float:
        return abs(complex(overlap_closed_form(np.array([t]), te, params)[0]))

    width_tol = _BISECT_REL_TOL * eff.period
    interior = (modulus[1:-1] <= modulus[:-2]) & (modulus[1:-1] <= modulus[2:])
    candidates = list(np.nonzero(interior)[0] + 1)
    if modulus[-1] < modulus[-2]:
        candidates.append(n_samples - 1)
    for idx in candidates:
        if modulus[idx] > _ZERO_CANDIDATE_CEILING:
            continue
        lo = grid[max(idx - 1, 0)]
        hi = grid[min(idx + 1, n_samples - 1)]
        t_min = _refine_minimum(f, lo, grid[idx], hi, width_tol)
        if t_min <= 0:
            continue
        if f(t_min) <= overlap_tol:
            psi1, psi2 = make_psi_pair_12(te)
            direct = psi1.conj() @ gram_kernel(t_min, params) @ psi2
            if abs(direct) <= 10.0 * overlap_tol:
                return float(t_min)
    return None


def real_part_crossing_time(
    te: ThetaEps, params: ModelParams, t_max: float
) -> float | None:
    """Earliest t in (0, t_max] where Re<psi1(t)|psi2(t)> crosses zero.

    The real part starts at cos(eps) > 0 and is continuous, so the first
    crossing (when it exists) is found by a sign-change bracket plus
    bisection.  A crossing exists iff sin(alpha) >= (1 - sin eps)/cos eps;
    below that threshold the real part stays positive and None is returned.
    At the threshold itself the crossing coincides with the strict
    orthogonality zero at beta t = pi/2.
    """
    if t_max <= 0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    eff = effective_hamiltonian(params)
    if eff.beta == 0.0:
        return None
    n_samples = max(4096, int(_SAMPLES_PER_PERIOD * t_max / eff.period) + 1)
    grid = np.linspace(0.0, t_max, n_samples)
    re = overlap_closed_form(grid, te, params).real
    sign_change = np.nonzero((re[:-1] > 0) & (re[1:] <= 0))[0]
    if sign_change.size == 0:
        return None
    lo, hi = float(grid[sign_change[0]]), float(grid[sign_change[0] + 1])

    def f(t: float) -> float:
        return float(overlap_closed_form(np.array([t]), te, params)[0].real)

    width_tol = _BISECT_REL_TOL * eff.period
    f_lo = f(lo)
    while hi - lo > width_tol:
        mid = (lo + hi) / 2.0
        f_mid = f(mid)
        if (f_lo > 0) == (f_mid > 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def strict_orthogonality_alpha(eps_state: float) -> float:
    """The unique alpha where the evolved pair becomes exactly orthogonal.

    Setting real and imaginary parts of the overlap to zero simultaneously
    forces beta t = pi/2 (mod pi) and sin(alpha) = (1 - sin eps)/cos eps.
    For eps = 0.1 this is alpha ~ 1.1306 rad; as eps -> 0 it climbs to
    pi/2 — discriminating ever-closer states by evolution pushes the
    working point into the exceptional point, mirroring the static picture.
    """
    if not 0 < eps_state < math.pi / 2:
        raise ValueError(f"eps_state must lie in (0, pi/2), got {eps_state}")
    return math.asin((1.0 - math.sin(eps_state)) / math.cos(eps_state))


def orthogonality_sin2_tabulated(alpha: float, eps_state: float) -> complex:
    """A carried closed-form candidate for sin^2(beta t*) at orthogonality.

    Evaluated under the minimal literal reading of its (partly garbled)
    source expression: the truncated product is completed as
    cos(eps) sin(alpha), the trailing separator is read as division by
    2 [(cos 2a + cos(eps) sin(alpha))^2 - 4 cos^2(a) sin(alpha)], and the
    square root takes the principal complex branch.  The values are wildly
    outside [0, 1] for generic angles (e.g. ~65.6 at alpha = 0.3,
    eps = 0.1), so this is exposed for auditing only and is never used by
    the root finders.

    Raises SingularPointError where the completed denominator vanishes.
    """
    ca, sa = math.cos(alpha), math.sin(alpha)
    if sa == 0.0:
        raise SingularPointError("expression carries cot(alpha): singular at 0")
    c2a = math.cos(2.0 * alpha)
    ce, c2e = math.cos(eps_state), math.cos(2.0 * eps_state)
    quad = (c2a + ce * sa) ** 2 - 4.0 * ca**2 * sa
    denominator = 2.0 * quad
    if abs(denominator) < 1e-300:
        raise SingularPointError(
            "completed denominator vanishes at this (alpha, eps)"
        )
    linear = -4.0 * ca * ((1.0 - 3.0 * c2a) * ce * (ca / sa) + (1.0 - c2e - 4.0 * sa) * ca)
    bracket = (c2e + 4.0 * sa - 1.0) * math.sin(2.0 * alpha) ** 2 + 2.0 * ca**2 * ce * (
        3.0 * math.sin(3.0 * alpha) - 5.0 * sa
    )
    under_root = (
        -4.0 * ca**4 * sa**2 * (ce - sa) ** 2 * quad + bracket**2 / 16.0
    )
    return (linear + complex(np.sqrt(complex(under_root)))) / denominator


@dataclass(frozen=True)
class ParamsFamily:
    """Fixed (hbar_omega, eps_energy) sweeping rho to realize each alpha."""

    hbar_omega: float = 1.0
    eps_energy: float = 0.0

    def params_for(self, alpha: float) -> ModelParams:
        return coupling_for_alpha(
            alpha, 0, hbar_omega=self.hbar_omega, eps_energy=self.eps_energy
        )


@dataclass(frozen=True)
class ScanRow:
    """One (eps, alpha) point of the orthogonality-time scan.

    ``t_star`` is the strict orthogonality time or NaN; ``divergent`` is set
    when no strict event occurs within the search window (the generic case,
    since strict zeros live on a measure-zero alpha set).  ``re_root_t`` is
    the first real-part zero crossing (NaN when the real part never turns
    negative, i.e. below the threshold alpha); ``re_root_sin2`` is
    sin^2(beta t) at that crossing; ``min_abs_overlap`` is the smallest
    sampled |overlap| in the window — the quantitative depth of the dip.
    """

    eps_state: float
    alpha: float
    beta: float
    t_max: float
    t_star: float
    divergent: bool
    re_root_t: float
    re_root_sin2: float
    min_abs_overlap: float


def scan_alpha(
    eps_values: Sequence[float],
    alpha_values: Sequence[float],
    family: ParamsFamily | None = None,
    periods: float = 50.0,
) -> list[ScanRow]:
    """Scan the orthogonality search over a grid of (eps, alpha).

    Each row searches [0, periods * 2 pi / beta].  Rows where alpha is at or
    beyond the exceptional point (beta <= 0, or the coupling outside the
    reality window) are marked divergent with NaN times.  The scan is
    deterministic: fixed grids, no randomness.
    """
    fam = family if family is not None else ParamsFamily()
    rows: list[ScanRow] = []
    for eps_state in eps_values:
        te = ThetaEps.standard(float(eps_state))
        for alpha in alpha_values:
            alpha = float(alpha)
            try:
                params = fam.params_for(alpha)
                eff = effective_hamiltonian(params)
                if eff.beta <= 0.0 or math.cos(eff.alpha) == 0.0:
                    raise RealityDomainError("at the exceptional point")
            except (RealityDomainError, ValueError):
                rows.append(
                    ScanRow(
                        eps_state=float(eps_state),
                        alpha=alpha,
                        beta=math.nan,
                        t_max=math.nan,
                        t_star=math.nan,
                        divergent=True,
                        re_root_t=math.nan,
                        re_root_sin2=math.nan,
                        min_abs_overlap=math.nan,
                    )
                )
                continue
            t_max = periods * eff.period
            t_star = find_orthogonality_time(te, params, t_max)
            re_root = real_part_crossing_time(te, params, t_max)
            n_samples = max(4096, int(_SAMPLES_PER_PERIOD * periods) + 1)
            grid = np.linspace(0.0, t_max, n_samples)
            min_abs = float(np.abs(overlap_closed_form(grid, te, params)).min())
            rows.append(
                ScanRow(
                    eps_state=float(eps_state),
                    alpha=alpha,
                    beta=eff.beta,
                    t_max=t_max,
                    t_star=math.nan if t_star is None else t_star,
                    divergent=t_star is None,
                    re_root_t=math.nan if re_root is None else re_root,
                    re_root_sin2=(
                        math.nan
                        if re_root is None
                        else math.sin(eff.beta * re_root) ** 2
                    ),
                    min_abs_overlap=min_abs,
                )
            )
    return rows
