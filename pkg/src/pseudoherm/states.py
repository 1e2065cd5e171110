"""Entangled candidate states and metric-based discrimination.

Two nearly parallel two-qubit states are written over the entangled sector
kets e_A = (|0,+1/2> + |1,-1/2>)/sqrt(2) and e_B = (|0,-1/2> + |1,+1/2>)/sqrt(2):

    psi1 = (cos(theta/2), sin(theta/2)),   psi2 = (cos(theta/2 + eps), sin(theta/2 + eps))

with the convention theta = pi/2 - eps, so their Dirac overlap is cos(eps) —
close to 1, indistinguishable by ordinary projective measurement.  Under the
block metric eta(alpha) their overlap is cos(eps) - sin(alpha)*sin(theta+eps),
which vanishes exactly at sin(alpha) = cos(eps): a metric choice turns the
pair orthogonal and single-shot distinguishable.

The swapped pair psi3 = (sin(theta/2), cos(theta/2)), psi4 =
(sin(theta/2 - eps), cos(theta/2 - eps)) is *not* discriminated by the same
metric: its raw eta-overlap at the discrimination point is 2 cos(eps) sin^2(eps),
an O(1) quantity after normalization.  Under the theta = pi/2 - eps
convention psi3 coincides with psi2 exactly, which is why the projector onto
psi3 reproduces the projector onto psi2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateNormError
from .linalg import require_finite
from .metric import MetricOperator, eta_inner, eta_inner_normalized, metric_closed_form

__all__ = [
    "FOUR_STATE_LABELS",
    "ThetaEps",
    "make_psi_pair_12",
    "make_psi_pair_34",
    "embed_4d",
    "embed_bra_4d",
    "discrimination_alpha",
    "discrimination_metric",
    "realizes_discrimination",
    "eta_overlap_12",
    "Overlap34",
    "eta_overlap_34",
    "eta_bra",
    "eta_bra_unit",
    "rank1_eta_projector",
    "projector",
    "projector_coefficient_family",
    "abcd_operators",
    "projector_4d",
    "CompletenessReport",
    "completeness_report",
]

#: Ordered four-dimensional basis underlying the sector embedding.
FOUR_STATE_LABELS = ("|0,+1/2>", "|1,-1/2>", "|0,-1/2>", "|1,+1/2>")

#: Separations beyond this are outside the small-angle regime the
#: discrimination story assumes; constructors warn but proceed.
EPS_STATE_SOFT_LIMIT = 0.3


@dataclass(frozen=True)
class ThetaEps:
    """Mixing angle theta and angular separation eps of the state pairs."""

    theta: float
    eps_state: float

    def __post_init__(self):
        if not (math.isfinite(self.theta) and math.isfinite(self.eps_state)):
            raise ValueError("theta and eps_state must be finite")
        if self.eps_state <= 0:
            raise ValueError(f"eps_state must be positive, got {self.eps_state}")
        if self.eps_state > EPS_STATE_SOFT_LIMIT:
            warnings.warn(
                f"eps_state = {self.eps_state} leaves the small-separation "
                "regime; closed-form identities assume eps_state <= "
                f"{EPS_STATE_SOFT_LIMIT}",
                stacklevel=2,
            )

    @classmethod
    def standard(cls, eps_state: float) -> "ThetaEps":
        """The symmetric convention theta = pi/2 - eps used throughout."""
        return cls(theta=math.pi / 2 - eps_state, eps_state=eps_state)


def make_psi_pair_12(te: ThetaEps) -> tuple[np.ndarray, np.ndarray]:
    """First candidate pair as real sector 2-vectors (unit Dirac norm)."""
    half = te.theta / 2.0
    psi1 = np.array([math.cos(half), math.sin(half)], dtype=complex)
    psi2 = np.array(
        [math.cos(half + te.eps_state), math.sin(half + te.eps_state)], dtype=complex
    )
    return psi1, psi2


def make_psi_pair_34(te: ThetaEps) -> tuple[np.ndarray, np.ndarray]:
    """Swapped candidate pair.  Note psi3 == psi2 when theta = pi/2 - eps."""
    half = te.theta / 2.0
    psi3 = np.array([math.sin(half), math.cos(half)], dtype=complex)
    psi4 = np.array(
        [math.sin(half - te.eps_state), math.cos(half - te.eps_state)], dtype=complex
    )
    return psi3, psi4


def embed_4d(state) -> np.ndarray:
    """Isometric embedding of a sector 2-vector into the 4-state basis.

    (c_A, c_B) maps to (c_A, c_A, c_B, c_B)/sqrt(2) over FOUR_STATE_LABELS;
    Dirac norms are preserved.
    """
    v = require_finite(state, "state")
    if v.shape != (2,):
        raise ValueError(f"sector state must have shape (2,), got {v.shape}")
    inv = 1.0 / math.sqrt(2.0)
    return np.array([v[0] * inv, v[0] * inv, v[1] * inv, v[1] * inv], dtype=complex)


def embed_bra_4d(covector) -> np.ndarray:
    """Same spreading for a sector covector (row) into a 4-component bra."""
    return embed_4d(covector)


def discrimination_alpha(eps_state: float) -> float:
    """The mixing angle arcsin(cos eps) = pi/2 - eps that orthogonalizes the pair.

    As eps -> 0 this runs into pi/2: discriminating ever-closer states
    demands operating ever closer to the exceptional point.
    """
    if not 0 < eps_state < math.pi / 2:
        raise ValueError(f"eps_state must lie in (0, pi/2), got {eps_state}")
    return math.asin(math.cos(eps_state))


def discrimination_metric(eps_state: float) -> MetricOperator:
    """eta at the discrimination point sin(alpha) = cos(eps)."""
    return metric_closed_form(discrimination_alpha(eps_state))


def realizes_discrimination(n, params, eps_state: float, tol: float = 1e-12) -> bool:
    """Whether block (n, params) sits at the discrimination angle for eps_state."""
    from .blocks import alpha_of

    return abs(alpha_of(n, params) - discrimination_alpha(eps_state)) <= tol


def eta_overlap_12(te: ThetaEps, eta: MetricOperator) -> complex:
    """<psi1, eta psi2>.

    Under the theta = pi/2 - eps convention this equals cos(eps) - sin(alpha)
    exactly, hence zero at the discrimination point.
    """
    psi1, psi2 = make_psi_pair_12(te)
    return eta_inner(psi1, psi2, eta)


@dataclass(frozen=True)
class Overlap34:
    """Raw and eta-normalized overlap of the swapped pair."""

    raw: complex
    normalized: complex


def eta_overlap_34(te: ThetaEps, eta: MetricOperator) -> Overlap34:
    """<psi3, eta psi4>, raw and normalized.

    Closed form cos(eps) - sin(alpha)*cos(2 eps); at the discrimination point
    this is 2 cos(eps) sin^2(eps) — small in absolute terms but O(1) once the
    states are eta-normalized (approximately 2/sqrt(5) for small eps).  The
    swapped pair is *not* orthogonalized by the pair-12 metric.
    """
    psi3, psi4 = make_psi_pair_34(te)
    return Overlap34(
        raw=eta_inner(psi3, psi4, eta),
        normalized=eta_inner_normalized(psi3, psi4, eta),
    )


def eta_bra(state, eta) -> np.ndarray:
    """Dual covector of ``state``: (eta state)^dag / <state, eta state>.

    Normalized by the full squared eta-norm so the pairing with ``state`` is
    exactly 1, which is what makes outer products with it projectors.  For a
    Dirac-normalized state at alpha = 0 (eta = I) this reduces to the
    ordinary conjugate-transpose bra.
    """
    v = require_finite(state, "state")
    pairing = eta_inner(v, v, eta).real
    if pairing <= 0:
        raise DegenerateNormError(
            f"cannot form dual bra: squared eta-norm {pairing:.6g} is not positive"
        )
    matrix = eta.matrix if isinstance(eta, MetricOperator) else np.asarray(eta)
    return (matrix @ v).conj() / pairing


def eta_bra_unit(state, eta) -> np.ndarray:
    """Unit-convention bra: (eta state)^dag / sqrt(<state, eta state>).

    This is the dual of the eta-normalized ket; its pairing with the raw
    state is the eta-norm (sin eps at the discrimination point), not 1.  In
    embedded 4-component form its coefficients carry the characteristic
    1/(sqrt(2) sin eps) prefactor.  Kept alongside :func:`eta_bra` because
    both conventions appear in derived formulas; only :func:`eta_bra` makes
    projectors.
    """
    v = require_finite(state, "state")
    pairing = eta_inner(v, v, eta).real
    if pairing <= 0:
        raise DegenerateNormError(
            f"cannot form unit bra: squared eta-norm {pairing:.6g} is not positive"
        )
    matrix = eta.matrix if isinstance(eta, MetricOperator) else np.asarray(eta)
    return (matrix @ v).conj() / math.sqrt(pairing)


def rank1_eta_projector(state, eta) -> np.ndarray:
    """|state><state|-style eta-orthogonal projector |s> (eta s)^dag / (s^dag eta s).

    Idempotent for any state with nonzero squared eta-norm; fixes ``state``
    and annihilates everything eta-orthogonal to it.
    """
    v = require_finite(state, "state")
    return np.outer(v, eta_bra(v, eta))


def projector(i: int, te: ThetaEps, eta: MetricOperator) -> np.ndarray:
    """Rank-1 eta-orthogonal projector onto psi_i, i in 1..4.

    Built as |psi_i> eta_bra(psi_i), so P_i psi_i = psi_i and P_i^2 = P_i for
    every i.  At the discrimination point P_1 + P_2 = I and P_1 psi_2 = 0;
    P_3 equals P_2 (psi3 == psi2), while P_4 differs from the closed-form
    coefficient family at O(1) — see :func:`projector_coefficient_family`
    and :func:`completeness_report` for the quantified comparison.
    """
    if i not in (1, 2, 3, 4):
        raise ValueError(f"projector index must be 1..4, got {i}")
    psi1, psi2 = make_psi_pair_12(te)
    psi3, psi4 = make_psi_pair_34(te)
    state = {1: psi1, 2: psi2, 3: psi3, 4: psi4}[i]
    return rank1_eta_projector(state, eta)


def projector_coefficient_family(i: int, eps_state: float) -> np.ndarray:
    """Closed-form projector family at the discrimination point.

    Two distinct matrices cover the four indices:

        i in {1, 4}:  [[1+s, -c], [ c, s-1]] / (2 s)
        i in {2, 3}:  [[s-1,  c], [-c, s+1]] / (2 s)

    with s = sin(eps), c = cos(eps).  Both are idempotent with unit trace,
    sum to the identity within each pair, and sum to 2 I over all four
    indices.  For i in {1, 2, 3} the family coincides with the generic
    construction of :func:`projector`; for i = 4 it does not (it maps
    psi4 to -psi1), which is recorded, not hidden.
    """
    if i not in (1, 2, 3, 4):
        raise ValueError(f"projector index must be 1..4, got {i}")
    s, c = math.sin(eps_state), math.cos(eps_state)
    if i in (1, 4):
        m = np.array([[1.0 + s, -c], [c, s - 1.0]], dtype=complex)
    else:
        m = np.array([[s - 1.0, c], [-c, s + 1.0]], dtype=complex)
    return m / (2.0 * s)


def abcd_operators() -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """The four 4x4 sector outer-product operators A, B, C, D.

    With k_A = (1,1,0,0) and k_B = (0,0,1,1) over FOUR_STATE_LABELS:
    A = k_A k_A^T, B = k_B k_B^T, C = k_A k_B^T, D = k_B k_A^T.
    A/2 and B/2 are rank-1 projectors onto the two entangled sector rays,
    (A+B)/2 embeds the sector identity, and C^dag = D.
    """
    k_a = np.array([1.0, 1.0, 0.0, 0.0])
    k_b = np.array([0.0, 0.0, 1.0, 1.0])
    return (
        np.outer(k_a, k_a).astype(complex),
        np.outer(k_b, k_b).astype(complex),
        np.outer(k_a, k_b).astype(complex),
        np.outer(k_b, k_a).astype(complex),
    )


def projector_4d(i: int, eps_state: float) -> np.ndarray:
    """Coefficient-family projector expanded over the A/B/C/D operators.

    i in {1,4}: [(1+s) A + (s-1) B - c C + c D] / (4 s)
    i in {2,3}: [(s-1) A + (s+1) B + c C - c D] / (4 s)

    Identical to embedding the sector-space family isometrically into the
    four-state basis (tested to rounding).
    """
    if i not in (1, 2, 3, 4):
        raise ValueError(f"projector index must be 1..4, got {i}")
    s, c = math.sin(eps_state), math.cos(eps_state)
    a, b, c_op, d = abcd_operators()
    if i in (1, 4):
        combo = (1.0 + s) * a + (s - 1.0) * b - c * c_op + c * d
    else:
        combo = (s - 1.0) * a + (s + 1.0) * b + c * c_op - c * d
    return combo / (4.0 * s)


def _max_abs(m: np.ndarray) -> float:
    return float(np.abs(m).max())


@dataclass(frozen=True)
class CompletenessReport:
    """Numerical audit of the projector suite at the discrimination point.

    Family entries refer to the closed-form coefficient family (pairwise
    equal by construction); generic entries refer to the rank-1 eta-dual
    construction.  ``family_sum_residual`` quantifies the double cover
    sum(P_i) = 2 I of the four-member family; ``generic_p4_mismatch`` is the
    O(1) gap between the two constructions at i = 4; ``p3_action_on_psi4``
    is |P_3 psi4| = 2 cos(eps): the swapped pair is not eta-orthogonal, so
    no construction annihilates psi4 with P_3.
    """

    family_p12_residual: float
    family_p34_residual: float
    family_sum_residual: float
    family_pair_14_residual: float
    family_pair_23_residual: float
    generic_p12_residual: float
    generic_pair_23_residual: float
    generic_p4_mismatch: float
    p3_action_on_psi4: float
    raw_overlap_34: float
    normalized_overlap_34: float


def completeness_report(te: ThetaEps) -> CompletenessReport:
    """Compute every projector identity and deviation in one sweep."""
    eps = te.eps_state
    eta = discrimination_metric(eps)
    identity = np.eye(2, dtype=complex)

    fam = {i: projector_coefficient_family(i, eps) for i in (1, 2, 3, 4)}
    gen = {i: projector(i, te, eta) for i in (1, 2, 3, 4)}
    _, psi4 = make_psi_pair_34(te)
    overlap34 = eta_overlap_34(te, eta)

    return CompletenessReport(
        family_p12_residual=_max_abs(fam[1] + fam[2] - identity),
        family_p34_residual=_max_abs(fam[3] + fam[4] - identity),
        family_sum_residual=_max_abs(sum(fam.values()) - 2.0 * identity),
        family_pair_14_residual=_max_abs(fam[1] - fam[4]),
        family_pair_23_residual=_max_abs(fam[2] - fam[3]),
        generic_p12_residual=_max_abs(gen[1] + gen[2] - identity),
        generic_pair_23_residual=_max_abs(gen[2] - gen[3]),
        generic_p4_mismatch=_max_abs(gen[4] - fam[4]),
        p3_action_on_psi4=float(np.linalg.norm(gen[3] @ psi4)),
        raw_overlap_34=overlap34.raw.real,
        normalized_overlap_34=overlap34.normalized.real,
    )
