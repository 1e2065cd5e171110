"""Full truncated-space tests: operators, pseudo-Hermiticity, spectrum."""

import math

import numpy as np
import pytest

from pseudoherm.fockspace import (
    FockSpinBasis,
    SPIN_DOWN,
    SPIN_UP,
    build_full_hamiltonian,
    evolve_full,
    full_spectrum,
    lowering_operator,
    number_operator,
    parity_operator,
    pseudo_hermiticity_residual,
    sigma_z_operator,
)
from pseudoherm.blocks import block_hamiltonian
from pseudoherm.params import ModelParams

SPECTRUM_TOL = 1e-10
RESIDUAL_TOL = 1e-13

PARAMS = ModelParams(hbar_omega=1.0, eps_energy=0.3, rho=0.05)


def test_basis_indexing_roundtrip():
    basis = FockSpinBasis(n_max=5)
    assert basis.dimension == 12
    seen = set()
    for n in range(6):
        for m_s in (SPIN_UP, SPIN_DOWN):
            seen.add(basis.index(n, m_s))
    assert seen == set(range(12))
    assert len(basis.labels()) == 12
    with pytest.raises(ValueError):
        basis.index(6, SPIN_UP)
    with pytest.raises(ValueError):
        basis.index(0, 0.3)
    with pytest.raises(ValueError):
        FockSpinBasis(n_max=0)


def test_lowering_and_number_operators():
    basis = FockSpinBasis(n_max=4)
    a = lowering_operator(basis)
    num = number_operator(basis)
    # a |3, up> = sqrt(3) |2, up>
    vec = np.zeros(basis.dimension)
    vec[basis.index(3, SPIN_UP)] = 1.0
    out = a @ vec
    assert out[basis.index(2, SPIN_UP)] == pytest.approx(math.sqrt(3))
    assert np.count_nonzero(out) == 1
    # number operator diagonal equals a^dag a except on the truncated level
    rebuilt = a.conj().T @ a
    keep = basis.index(basis.n_max, SPIN_UP)
    assert np.abs((rebuilt - num)[:keep, :keep]).max() <= 1e-14


def test_involutions():
    basis = FockSpinBasis(n_max=6)
    parity = parity_operator(basis)
    sz = sigma_z_operator(basis)
    eye = np.eye(basis.dimension)
    assert np.abs(parity @ parity - eye).max() == 0.0
    assert np.abs(sz @ sz - eye).max() == 0.0


def test_pseudo_hermiticity_residuals_vanish():
    basis = FockSpinBasis(n_max=12)
    for witness in ("parity", "sigma_z"):
        assert pseudo_hermiticity_residual(PARAMS, basis, witness) <= RESIDUAL_TOL
    # The relation is exact even without excluding the top Fock level: the
    # truncated ladder drops coupling entries in +/- pairs.
    h = build_full_hamiltonian(PARAMS, basis)
    for op in (parity_operator(basis), sigma_z_operator(basis)):
        assert np.abs(op @ h @ op - h.conj().T).max() <= RESIDUAL_TOL
    with pytest.raises(ValueError):
        pseudo_hermiticity_residual(PARAMS, basis, witness="bogus")


def _dense_spectrum(params, basis):
    values = np.linalg.eigvals(build_full_hamiltonian(params, basis))
    return sorted(values, key=lambda z: (round(z.real, 9), round(z.imag, 9)))


def test_full_spectrum_matches_dense_eigensolver():
    basis = FockSpinBasis(n_max=8)
    lines = full_spectrum(PARAMS, basis)
    analytic = [line.value for line in lines]
    # The truncated matrix carries one extra artifact eigenvalue from the
    # orphaned |n_max, up> state, excluded from full_spectrum by contract.
    analytic.append(complex(PARAMS.eps_energy / 2 + basis.n_max * PARAMS.hbar_omega))
    analytic.sort(key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    dense = _dense_spectrum(PARAMS, basis)
    assert len(analytic) == len(dense)
    assert max(abs(a - d) for a, d in zip(analytic, dense)) <= SPECTRUM_TOL


def test_full_spectrum_broken_blocks_conjugate_pairs():
    params = ModelParams(hbar_omega=1.0, eps_energy=0.3, rho=0.3)
    basis = FockSpinBasis(n_max=6)
    lines = full_spectrum(params, basis)
    broken = [ln for ln in lines if abs(ln.value.imag) > 0]
    assert broken, "strong coupling must break high blocks"
    values = sorted(
        (ln.value for ln in broken), key=lambda z: (round(z.real, 9), z.imag)
    )
    for lo, hi in zip(values[::2], values[1::2]):
        assert lo == pytest.approx(hi.conjugate(), abs=1e-12)
    analytic = [ln.value for ln in lines]
    analytic.append(complex(params.eps_energy / 2 + basis.n_max * params.hbar_omega))
    analytic.sort(key=lambda z: (round(z.real, 9), round(z.imag, 9)))
    dense = _dense_spectrum(params, basis)
    assert max(abs(a - d) for a, d in zip(analytic, dense)) <= SPECTRUM_TOL


def test_ground_state_acquires_pure_phase():
    basis = FockSpinBasis(n_max=6)
    ground = basis.ground_state()
    t = 2.31
    evolved = evolve_full(ground, t, PARAMS, basis)
    expected = np.exp(1j * PARAMS.eps_energy * t / 2.0) * ground
    assert np.abs(evolved - expected).max() <= 1e-12


def test_full_hamiltonian_reproduces_blocks():
    basis = FockSpinBasis(n_max=7)
    h = build_full_hamiltonian(PARAMS, basis)
    for n in (0, 2, 5):
        idx = [basis.index(n, SPIN_UP), basis.index(n + 1, SPIN_DOWN)]
        sub = h[np.ix_(idx, idx)]
        assert np.abs(sub - block_hamiltonian(n, PARAMS)).max() <= 1e-14


def test_evolution_is_not_unitary():
    basis = FockSpinBasis(n_max=6)
    state = np.zeros(basis.dimension, dtype=complex)
    state[basis.index(0, SPIN_UP)] = 1.0
    evolved = evolve_full(state, 3.0, PARAMS, basis)
    assert abs(np.linalg.norm(evolved) - 1.0) > 1e-4


def test_evolve_full_shape_check():
    basis = FockSpinBasis(n_max=3)
    with pytest.raises(ValueError):
        evolve_full(np.zeros(5), 1.0, PARAMS, basis)
