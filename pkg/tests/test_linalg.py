"""Property and example tests for the 2x2 linear-algebra kernel.

The analytic exponential, the series exponential, and scipy's expm form a
three-way check: no route is ever validated only against itself.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from pseudoherm.errors import DimensionMismatchError, NonFiniteInputError
from pseudoherm.linalg import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    eig_2x2,
    exp_2x2,
    exp_series,
    pauli_decompose,
    pauli_recompose,
)

ROUNDTRIP_TOL = 1e-13
EXP_REL_TOL = 1e-10
EIG_RESIDUAL_RTOL = 1e-12

_finite = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)


@st.composite
def complex_2x2(draw):
    entries = [complex(draw(_finite), draw(_finite)) for _ in range(4)]
    return np.array(entries, dtype=complex).reshape(2, 2)


@st.composite
def small_scalar(draw):
    return complex(
        draw(st.floats(-1.5, 1.5, allow_nan=False)),
        draw(st.floats(-1.5, 1.5, allow_nan=False)),
    )


@given(complex_2x2())
def test_pauli_roundtrip(m):
    dec = pauli_decompose(m)
    assert np.abs(pauli_recompose(dec) - m).max() <= ROUNDTRIP_TOL


def test_pauli_coefficients_on_basis():
    # The Pauli matrices themselves decompose onto unit coefficients.
    for vec_index, sigma in enumerate((SIGMA_X, SIGMA_Y, SIGMA_Z)):
        dec = pauli_decompose(sigma)
        assert dec.scalar == 0
        expected = [0, 0, 0]
        expected[vec_index] = 1
        assert np.allclose(dec.vector, expected, atol=1e-15)
    assert pauli_decompose(IDENTITY_2).scalar == 1


def test_pauli_vector_square_is_unconjugated():
    dec = pauli_decompose(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    # m = (0, i, 0): the unconjugated square is -1, not +1.
    assert dec.vector_square == pytest.approx(-1.0)


@settings(max_examples=150)
@given(complex_2x2(), small_scalar())
def test_exp_three_routes_agree(m, s):
    analytic = exp_2x2(m, s)
    series = exp_series(m, s)
    reference = expm(s * m)
    scale = max(1.0, float(np.abs(reference).max()))
    assert np.abs(analytic - reference).max() <= EXP_REL_TOL * scale
    assert np.abs(series - reference).max() <= EXP_REL_TOL * scale


@given(complex_2x2())
def test_exp_inverse_is_identity(m):
    product = exp_2x2(m, 1.0) @ exp_2x2(m, -1.0)
    scale = max(1.0, float(np.abs(exp_2x2(m, 1.0)).max()) ** 2)
    assert np.abs(product - IDENTITY_2).max() <= 1e-11 * scale


def test_exp_nilpotent_limit_branch():
    nilpotent = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    out = exp_2x2(nilpotent, 2.5)
    assert np.abs(out - (IDENTITY_2 + 2.5 * nilpotent)).max() <= 1e-15


def test_exp_scalar_matrix():
    out = exp_2x2(3.0 * IDENTITY_2, 1.0)
    assert np.abs(out - np.exp(3.0) * IDENTITY_2).max() <= 1e-12


def test_exp_zero_time_is_identity():
    m = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
    assert np.abs(exp_2x2(m, 0.0) - IDENTITY_2).max() == 0.0


def test_exp_series_dimension_agnostic():
    rng = np.random.default_rng(7)
    m = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    assert np.abs(exp_series(m) - expm(m)).max() <= 1e-10 * max(
        1.0, float(np.abs(expm(m)).max())
    )


def test_exp_series_rejects_non_square():
    with pytest.raises(DimensionMismatchError):
        exp_series(np.zeros((2, 3)))


def test_exp_rejects_non_finite():
    with pytest.raises(NonFiniteInputError):
        exp_2x2(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_exp_accepts_non_contiguous_views():
    m = np.arange(4.0).reshape(2, 2) + 1j
    # conj().T produces a strided view; it must be handled like any input.
    assert np.abs(exp_2x2(m.conj().T, 1j) - expm(1j * m.conj().T)).max() <= 1e-10


@given(complex_2x2())
def test_eig_residual_and_invariants(m):
    sys = eig_2x2(m)
    scale = max(1.0, float(np.linalg.norm(m)))
    assert sys.residual(m) <= EIG_RESIDUAL_RTOL * scale
    trace = m[0, 0] + m[1, 1]
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    assert abs(sum(sys.values) - trace) <= 1e-11 * scale
    assert abs(sys.values[0] * sys.values[1] - det) <= 1e-11 * scale**2
    for v in sys.vectors:
        assert abs(np.linalg.norm(v) - 1.0) <= 1e-12


def test_eig_jordan_block_is_defective():
    sys = eig_2x2(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert sys.defective
    assert sys.values[0] == pytest.approx(1.0)
    # Both slots carry the single eigendirection (1, 0).
    for v in sys.vectors:
        assert np.abs(v - np.array([1.0, 0.0])).max() <= 1e-12


def test_eig_identity_is_not_defective():
    sys = eig_2x2(IDENTITY_2)
    assert not sys.defective
    assert abs(np.vdot(sys.vectors[0], sys.vectors[1])) <= 1e-15


def test_eig_hermitian_gives_orthogonal_vectors():
    m = np.array([[2.0, 1.0 - 0.5j], [1.0 + 0.5j, -1.0]])
    sys = eig_2x2(m)
    assert not sys.defective
    assert abs(np.vdot(sys.vectors[0], sys.vectors[1])) <= 1e-12
    assert all(abs(v.imag) <= 1e-12 for v in sys.values)
