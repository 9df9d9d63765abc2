import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dynbound.dynamics import (
    Constant,
    HamiltonianSchedule,
    OperatorSchedule,
    PhysicalConstants,
    PiecewiseLinear,
    Ramp,
    Sinusoid,
    double_commutator,
    heisenberg_derivative,
    propagate_state,
    total_derivative,
)
from dynbound.errors import DimensionError, StepTooLarge, WaveformDomainError
from dynbound.harness.sampling import sample_haar_state, sample_hermitian
from dynbound.operators import HermitianOperator, PureState, complex_expectation, expectation
from dynbound.spin import PAULI_X, PAULI_Y, PAULI_Z, named_state, spin_operators

import oracles

SX, SY, SZ = spin_operators(1.0)
seeds = st.integers(0, 2**63 - 1)


def explicit_a(tau=1.0):
    return OperatorSchedule(((Constant(1.0), SX), (Ramp(1.0 / tau), SY)))


def spin_h(field, gamma=1.0):
    return HamiltonianSchedule(((field, HermitianOperator(-gamma * SZ.matrix)),))


# --- waveforms -------------------------------------------------------------


def test_waveform_values():
    assert Constant(2.5)(7.0) == 2.5 and Constant(2.5).derivative(7.0) == 0
    s = Sinusoid(2.0, 3.0, 0.5)
    assert s(1.0) == 2.0 * math.sin(3.5)
    assert s.derivative(1.0) == 6.0 * math.cos(3.5)
    r = Ramp(0.5, -1.0)
    assert r(4.0) == 1.0 and r.derivative(4.0) == 0.5


def test_piecewise_linear():
    p = PiecewiseLinear(((0, 0), (1, 2), (3, 0)))
    assert p(0.5) == 1.0 and p(2.0) == 1.0 and p(3.0) == 0.0
    assert p.derivative(0.5) == 2.0
    assert p.derivative(1.0) == 2.0  # left segment at the interior knot
    assert p.derivative(0.0) == 2.0
    assert p.derivative(2.0) == -1.0
    with pytest.raises(WaveformDomainError):
        p(3.5)
    with pytest.raises(WaveformDomainError):
        p.derivative(-0.1)
    with pytest.raises(ValueError):
        PiecewiseLinear(((0, 0), (0, 1)))


@pytest.mark.parametrize("w", [Constant(1.3), Ramp(-0.7, 2.0)])
def test_fd_exact_for_polynomial_waveforms(w):
    for t in (-1.0, 0.3, 2.0):
        h = 1e-3
        fd = (w(t + h) - w(t - h)) / (2 * h)
        assert fd == pytest.approx(w.derivative(t), abs=1e-10)


@pytest.mark.parametrize("w", [Sinusoid(1.0, 1.0), Sinusoid(2.0, 3.0, 0.4)])
def test_sinusoid_fd_second_order(w):
    for t in (0.3, 1.1, 2.0):
        errs = [abs((w(t + h) - w(t - h)) / (2 * h) - w.derivative(t)) for h in (1e-2, 5e-3)]
        assert 3.4 <= errs[0] / errs[1] <= 4.6


def test_constants_validation():
    with pytest.raises(ValueError):
        PhysicalConstants(hbar=0)
    with pytest.raises(ValueError):
        PhysicalConstants(tau=-1)


# --- schedules -------------------------------------------------------------


def test_schedule_rejects_mixed_dims():
    with pytest.raises(DimensionError):
        OperatorSchedule(((Constant(1), SX), (Constant(1), HermitianOperator.identity(3))))


def test_schedule_value_and_partial():
    a = explicit_a(tau=2.0)
    assert a.at(3.0).allclose(SX.matrix + 1.5 * SY.matrix, 1e-15)
    assert a.partial(3.0).allclose(0.5 * SY.matrix, 1e-15)
    assert not a.is_static and OperatorSchedule.constant(SX).is_static


# --- derivatives -----------------------------------------------------------


def test_heisenberg_conserved():
    assert heisenberg_derivative(SZ, SZ).allclose(np.zeros((2, 2)), 0)


def test_heisenberg_spin_precession():
    h = HermitianOperator(-SZ.matrix)
    assert heisenberg_derivative(h, SX, 1.0).allclose(SY.matrix, 1e-15)


def test_heisenberg_pauli():
    # oracle: i [sigma_x, sigma_y] = i * 2i sigma_z = -2 sigma_z
    ref = oracles.scale(1j, oracles.comm(oracles.scale(2, oracles.SX), oracles.scale(2, oracles.SY)))
    assert oracles.max_abs_diff(ref, oracles.scale(-2, oracles.scale(2, oracles.SZ))) == 0
    d = heisenberg_derivative(HermitianOperator(PAULI_X), HermitianOperator(PAULI_Y), 1.0)
    assert d.allclose(-2 * PAULI_Z, 1e-15)


def test_heisenberg_requires_positive_hbar():
    with pytest.raises(ValueError):
        heisenberg_derivative(SZ, SX, 0.0)
    with pytest.raises(DimensionError):
        heisenberg_derivative(SZ, HermitianOperator.identity(3))


@given(st.integers(2, 6), seeds, st.floats(0.1, 10))
def test_heisenberg_output_hermitian(dim, seed, hbar):
    h, a = sample_hermitian(dim, seed), sample_hermitian(dim, seed + 1)
    m = heisenberg_derivative(h, a, hbar).matrix
    assert np.max(np.abs(m - m.conj().T)) <= 1e-10


def test_total_derivative_examples():
    zero = total_derivative(OperatorSchedule.constant(SZ), HamiltonianSchedule.constant(SZ), 1.3)
    assert zero.allclose(np.zeros((2, 2)), 0)
    d0 = total_derivative(explicit_a(1.0), spin_h(Constant(1.0)), 0.0)
    assert d0.allclose(2.0 * SY.matrix, 1e-15)
    free = HamiltonianSchedule.zero(2)
    for t in (0.0, 0.7, 4.0):
        assert total_derivative(explicit_a(2.0), free, t).allclose(0.5 * SY.matrix, 1e-15)


def test_total_derivative_domain_error():
    h = spin_h(PiecewiseLinear(((0, 1), (1, 2))))
    with pytest.raises(WaveformDomainError):
        total_derivative(OperatorSchedule.constant(SX), h, 2.0)


@given(st.integers(2, 6), seeds, st.floats(-5, 5))
def test_total_derivative_reduces_for_constant_coefficients(dim, seed, t):
    h, a = sample_hermitian(dim, seed), sample_hermitian(dim, seed + 1)
    a_s = OperatorSchedule(((Constant(1.0), a),))
    h_s = HamiltonianSchedule(((Constant(1.0), h),))
    d = total_derivative(a_s, h_s, t)
    assert np.max(np.abs(d.matrix - heisenberg_derivative(h, a).matrix)) <= 1e-14


def test_double_commutator_examples():
    assert double_commutator(SZ, SZ).allclose(np.zeros((2, 2)), 0)
    h = HermitianOperator(-SZ.matrix)
    assert double_commutator(h, SX).allclose(SZ.matrix, 1e-15)
    for t in (0.0, 0.5, 2.0):
        a = HermitianOperator(SX.matrix + t * SY.matrix)
        assert double_commutator(h, a).allclose((1 + t * t) * SZ.matrix, 1e-14)


@given(st.integers(2, 6), seeds)
def test_double_commutator_properties(dim, seed):
    h, a = sample_hermitian(dim, seed), sample_hermitian(dim, seed + 1)
    psi = sample_haar_state(dim, seed + 2)
    dc = double_commutator(h, a)
    assert abs(complex_expectation(dc.matrix, psi).imag) <= 1e-10
    assert abs(complex_expectation(1j * dc.matrix, psi).real) <= 1e-10


# --- propagation -----------------------------------------------------------


def test_propagate_zero_hamiltonian():
    psi = sample_haar_state(3, 5)
    out = propagate_state(HamiltonianSchedule.zero(3), psi, 0.0, 2.0, 0.1)
    assert np.allclose(out.amplitudes, psi.amplitudes, atol=0, rtol=0)


def test_larmor_half_turn():
    h = spin_h(Constant(1.0))
    out = propagate_state(h, named_state("+x"), 0.0, math.pi, 1e-3)
    assert abs(abs(out.overlap(named_state("-x"))) - 1) <= 1e-6
    exact = PureState(oracles.larmor_state(math.pi))
    assert abs(abs(out.overlap(exact)) - 1) <= 1e-10


@given(st.integers(2, 5), seeds)
def test_propagate_preserves_norm(dim, seed):
    h = HamiltonianSchedule.constant(sample_hermitian(dim, seed))
    out = propagate_state(h, sample_haar_state(dim, seed + 1), 0.0, 0.3, 0.01)
    assert abs(np.linalg.norm(out.amplitudes) - 1) <= 1e-10


def test_propagate_step_too_large():
    h = HamiltonianSchedule.constant(HermitianOperator(50.0 * PAULI_Z))
    with pytest.raises(StepTooLarge):
        propagate_state(h, named_state("+x"), 0.0, 1.0, 0.1)


def test_propagate_argument_checks():
    h = spin_h(Constant(1.0))
    with pytest.raises(ValueError):
        propagate_state(h, named_state("+x"), 1.0, 0.0, 0.1)
    with pytest.raises(DimensionError):
        propagate_state(h, sample_haar_state(3, 0), 0.0, 1.0, 0.1)


def _ehrenfest_errors(h_sched, a_sched, psi0, t, steps=(1e-3, 5e-4), dt=1e-4):
    errs = []
    for h in steps:
        pm = propagate_state(h_sched, psi0, 0.0, t - h, dt)
        p0 = propagate_state(h_sched, pm, t - h, t, dt)
        pp = propagate_state(h_sched, p0, t, t + h, dt)
        fd = (expectation(a_sched.at(t + h), pp) - expectation(a_sched.at(t - h), pm)) / (2 * h)
        errs.append(abs(fd - expectation(total_derivative(a_sched, h_sched, t), p0)))
    return errs


@pytest.mark.parametrize("t", [0.5, 1.5])
def test_ehrenfest_second_order(t):
    errs = _ehrenfest_errors(spin_h(Sinusoid(1.0, 1.0)), explicit_a(), named_state("+x"), t)
    assert 3.4 <= errs[0] / errs[1] <= 4.6


def test_ehrenfest_generic_static():
    h = HamiltonianSchedule.constant(sample_hermitian(3, 1))
    a = OperatorSchedule.constant(sample_hermitian(3, 2))
    errs = _ehrenfest_errors(h, a, sample_haar_state(3, 3), 0.8)
    assert 3.4 <= errs[0] / errs[1] <= 4.6
