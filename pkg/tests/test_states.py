"""State-pair, overlap, and projector-suite tests at the discrimination point."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from pseudoherm.metric import eta_inner, metric_closed_form
from pseudoherm.states import (
    ThetaEps,
    abcd_operators,
    completeness_report,
    discrimination_alpha,
    discrimination_metric,
    embed_4d,
    embed_bra_4d,
    eta_bra,
    eta_bra_unit,
    eta_overlap_12,
    eta_overlap_34,
    make_psi_pair_12,
    make_psi_pair_34,
    projector,
    projector_4d,
    projector_coefficient_family,
    realizes_discrimination,
)
from pseudoherm.blocks import coupling_for_alpha
from pseudoherm.params import ModelParams

IDENTITY_TOL = 1e-12
CLOSED_FORM_TOL = 1e-14

# Frozen reference values at eps_state = 0.1 (independently computed from the
# closed forms cos(eps) - sin(alpha)*cos(2 eps) etc. before being pinned here).
DISCRIMINATION_ALPHA_01 = 1.4707963267948966
RAW_OVERLAP_34_01 = 0.019833838076209878
NORMALIZED_OVERLAP_34_01 = 0.8935281244087875
GENERIC_P4_MISMATCH_01 = 8.358494834862627

eps_values = st.floats(min_value=0.01, max_value=0.3)


def test_psi3_equals_psi2():
    te = ThetaEps.standard(0.1)
    _, psi2 = make_psi_pair_12(te)
    psi3, _ = make_psi_pair_34(te)
    assert np.abs(psi3 - psi2).max() <= 1e-15


def test_discrimination_alpha_reference():
    alpha = discrimination_alpha(0.1)
    assert alpha == pytest.approx(math.pi / 2 - 0.1, abs=1e-12)
    assert alpha == pytest.approx(DISCRIMINATION_ALPHA_01, abs=1e-12)
    with pytest.raises(ValueError):
        discrimination_alpha(0.0)
    with pytest.raises(ValueError):
        discrimination_alpha(2.0)


@given(eps=eps_values, alpha=st.floats(min_value=0.0, max_value=math.pi / 2))
def test_overlap_12_closed_form(eps, alpha):
    te = ThetaEps.standard(eps)
    eta = metric_closed_form(alpha)
    overlap = eta_overlap_12(te, eta)
    assert overlap.imag == 0.0
    assert overlap.real == pytest.approx(
        math.cos(eps) - math.sin(alpha), abs=CLOSED_FORM_TOL
    )


@given(eps=eps_values, alpha=st.floats(min_value=0.0, max_value=math.pi / 2))
def test_overlap_34_closed_form(eps, alpha):
    te = ThetaEps.standard(eps)
    eta = metric_closed_form(alpha)
    overlap = eta_overlap_34(te, eta)
    assert overlap.raw.real == pytest.approx(
        math.cos(eps) - math.sin(alpha) * math.cos(2 * eps), abs=CLOSED_FORM_TOL
    )


def test_overlaps_at_discrimination_point():
    te = ThetaEps.standard(0.1)
    eta = discrimination_metric(0.1)
    psi1, psi2 = make_psi_pair_12(te)
    assert abs(np.vdot(psi1, psi2)) == pytest.approx(math.cos(0.1), abs=1e-14)
    assert abs(eta_overlap_12(te, eta)) <= 1e-12
    overlap34 = eta_overlap_34(te, eta)
    assert overlap34.raw.real == pytest.approx(RAW_OVERLAP_34_01, abs=1e-12)
    assert overlap34.raw.real == pytest.approx(
        2 * math.cos(0.1) * math.sin(0.1) ** 2, abs=1e-14
    )
    assert overlap34.normalized.real == pytest.approx(
        NORMALIZED_OVERLAP_34_01, abs=1e-12
    )


@given(eps=eps_values)
def test_eta_norms_squared(eps):
    te = ThetaEps.standard(eps)
    eta = discrimination_metric(eps)
    psi1, psi2 = make_psi_pair_12(te)
    psi3, psi4 = make_psi_pair_34(te)
    expected_small = math.sin(eps) ** 2
    for v in (psi1, psi2, psi3):
        assert eta_inner(v, v, eta).real == pytest.approx(expected_small, abs=1e-14)
    assert eta_inner(psi4, psi4, eta).real == pytest.approx(
        1.0 - math.cos(eps) * math.cos(3 * eps), abs=1e-14
    )


def test_eta_bra_conventions():
    te = ThetaEps.standard(0.1)
    eta = discrimination_metric(0.1)
    psi1, psi2 = make_psi_pair_12(te)
    assert (eta_bra(psi1, eta) @ psi1).real == pytest.approx(1.0, abs=1e-13)
    assert (eta_bra_unit(psi1, eta) @ psi1).real == pytest.approx(
        math.sin(0.1), abs=1e-13
    )
    # The isometric embedding preserves pairings, including the cross zero.
    bra4 = embed_bra_4d(eta_bra_unit(psi1, eta))
    assert (bra4 @ embed_4d(psi1)).real == pytest.approx(math.sin(0.1), abs=1e-13)
    assert abs(bra4 @ embed_4d(psi2)) <= 1e-12


def test_embedding_is_isometric():
    rng = np.random.default_rng(7)
    for _ in range(20):
        u = rng.normal(size=2) + 1j * rng.normal(size=2)
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        assert np.vdot(embed_4d(u), embed_4d(v)) == pytest.approx(
            np.vdot(u, v), abs=1e-14
        )
    with pytest.raises(ValueError):
        embed_4d(np.zeros(3))


def test_generic_projectors_idempotent_and_complete():
    te = ThetaEps.standard(0.1)
    eta = discrimination_metric(0.1)
    psi1, psi2 = make_psi_pair_12(te)
    psi3, psi4 = make_psi_pair_34(te)
    states = {1: psi1, 2: psi2, 3: psi3, 4: psi4}
    for i in (1, 2, 3, 4):
        p = projector(i, te, eta)
        assert np.abs(p @ p - p).max() <= IDENTITY_TOL
        assert np.abs(p @ states[i] - states[i]).max() <= IDENTITY_TOL
    p1, p2 = projector(1, te, eta), projector(2, te, eta)
    assert np.abs(p1 @ psi2).max() <= IDENTITY_TOL
    assert np.abs(p1 + p2 - np.eye(2)).max() <= IDENTITY_TOL
    with pytest.raises(ValueError):
        projector(5, te, eta)


def test_family_identities():
    eps = 0.1
    identity = np.eye(2)
    fam = {i: projector_coefficient_family(i, eps) for i in (1, 2, 3, 4)}
    for p in fam.values():
        assert np.abs(p @ p - p).max() <= IDENTITY_TOL
        assert np.trace(p).real == pytest.approx(1.0, abs=1e-13)
    assert np.abs(fam[1] + fam[2] - identity).max() <= IDENTITY_TOL
    assert np.abs(fam[3] + fam[4] - identity).max() <= IDENTITY_TOL
    assert np.abs(sum(fam.values()) - 2.0 * identity).max() <= IDENTITY_TOL
    assert np.abs(fam[1] - fam[4]).max() == 0.0
    assert np.abs(fam[2] - fam[3]).max() == 0.0


def test_family_matches_generic_except_p4():
    te = ThetaEps.standard(0.1)
    eta = discrimination_metric(0.1)
    for i in (1, 2, 3):
        gap = np.abs(
            projector(i, te, eta) - projector_coefficient_family(i, 0.1)
        ).max()
        assert gap <= IDENTITY_TOL
    mismatch = np.abs(
        projector(4, te, eta) - projector_coefficient_family(4, 0.1)
    ).max()
    assert mismatch == pytest.approx(GENERIC_P4_MISMATCH_01, rel=1e-9)


def test_family_p4_maps_psi4_to_minus_psi1():
    te = ThetaEps.standard(0.1)
    psi1, _ = make_psi_pair_12(te)
    _, psi4 = make_psi_pair_34(te)
    image = projector_coefficient_family(4, 0.1) @ psi4
    assert np.abs(image + psi1).max() <= IDENTITY_TOL


def test_p3_does_not_annihilate_psi4():
    te = ThetaEps.standard(0.1)
    eta = discrimination_metric(0.1)
    _, psi4 = make_psi_pair_34(te)
    image = projector(3, te, eta) @ psi4
    assert np.linalg.norm(image) == pytest.approx(2 * math.cos(0.1), abs=1e-12)


def test_projector_4d_equals_embedded_family():
    basis1 = embed_4d(np.array([1.0, 0.0]))
    basis2 = embed_4d(np.array([0.0, 1.0]))
    embedding = np.column_stack([basis1, basis2])
    for i in (1, 2, 3, 4):
        fam = projector_coefficient_family(i, 0.1)
        lifted = embedding @ fam @ embedding.T
        assert np.abs(projector_4d(i, 0.1) - lifted).max() <= 1e-14


def test_abcd_operator_identities():
    a, b, c, d = abcd_operators()
    assert np.abs(a @ a - 2.0 * a).max() == 0.0
    assert np.abs(c.conj().T - d).max() == 0.0
    half_sum = (a + b) / 2.0
    assert np.abs(half_sum @ half_sum - half_sum).max() <= 1e-15


def test_completeness_report_fields():
    report = completeness_report(ThetaEps.standard(0.1))
    assert report.family_p12_residual <= IDENTITY_TOL
    assert report.family_p34_residual <= IDENTITY_TOL
    assert report.family_sum_residual <= IDENTITY_TOL
    assert report.family_pair_14_residual == 0.0
    assert report.family_pair_23_residual == 0.0
    assert report.generic_p12_residual <= IDENTITY_TOL
    assert report.generic_pair_23_residual <= IDENTITY_TOL
    assert report.generic_p4_mismatch == pytest.approx(
        GENERIC_P4_MISMATCH_01, rel=1e-9
    )
    assert report.p3_action_on_psi4 == pytest.approx(2 * math.cos(0.1), abs=1e-12)
    assert report.raw_overlap_34 == pytest.approx(RAW_OVERLAP_34_01, abs=1e-12)
    assert report.normalized_overlap_34 == pytest.approx(
        NORMALIZED_OVERLAP_34_01, abs=1e-12
    )


def test_theta_eps_validation():
    with pytest.raises(ValueError):
        ThetaEps.standard(0.0)
    with pytest.raises(ValueError):
        ThetaEps.standard(-0.2)
    with pytest.warns(UserWarning):
        ThetaEps.standard(0.45)


def test_realizes_discrimination():
    eps = 0.1
    at_point = coupling_for_alpha(discrimination_alpha(eps))
    assert realizes_discrimination(0, at_point, eps)
    away = ModelParams(hbar_omega=1.0, eps_energy=0.0, rho=0.1)
    assert not realizes_discrimination(0, away, eps)
