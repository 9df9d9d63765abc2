import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dynbound.bounds import (
    all_links_hold,
    chain_diagnostics,
    combined_bound_expectation,
    evaluate_static,
    evaluate_timedep,
    report_fields_close,
)
from dynbound.dynamics import Constant, HamiltonianSchedule, OperatorSchedule, Ramp, Sinusoid
from dynbound.errors import DimensionError
from dynbound.harness.sampling import sample_haar_state, sample_hermitian
from dynbound.operators import HermitianOperator
from dynbound.spin import named_state, spin_operators

import oracles

SX, SY, SZ = spin_operators(1.0)
MINUS_SZ = HermitianOperator(-SZ.matrix)
seeds = st.integers(0, 2**63 - 1)
dims = st.integers(2, 8)


def random_case(dim, seed, scale=1.0):
    return (sample_hermitian(dim, seed, scale), sample_hermitian(dim, seed + 1, scale),
            sample_haar_state(dim, seed + 2))


def explicit_a(tau=1.0):
    return OperatorSchedule(((Constant(1.0), SX), (Ramp(1.0 / tau), SY)))


# --- static ----------------------------------------------------------------


def test_conserved_observable_has_zero_bound():
    r = evaluate_static(SZ, SZ, sample_haar_state(2, 4))
    assert r.rhs_comm == 0 and r.slack == r.lhs and r.lhs >= 0
    assert all_links_hold(r)


def test_spin_saturation_matches_oracle():
    # oracle: dSx = dSy = 1/2 and <Sz> = 1/2 in |+z>
    lhs_ref = math.sqrt(oracles.var(oracles.SX, [1, 0])) * math.sqrt(oracles.var(oracles.SY, [1, 0]))
    rhs_ref = 0.5 * abs(oracles.expval(oracles.SZ, [1, 0]))
    assert lhs_ref == rhs_ref == 0.25
    r = evaluate_static(MINUS_SZ, SX, named_state("+z"))
    assert r.lhs == pytest.approx(0.25, abs=1e-15)
    assert r.rhs_comm == pytest.approx(0.25, abs=1e-15)
    assert abs(r.slack) <= 1e-15
    assert r.saturation_ratio == pytest.approx(1.0)
    assert not r.degenerate


def test_eigenstate_is_degenerate():
    r = evaluate_static(MINUS_SZ, SX, named_state("+x"))
    assert r.rhs_comm <= 1e-15 and r.lhs <= 1e-15
    assert r.degenerate and r.saturation_ratio is None


def test_dimension_checks():
    with pytest.raises(DimensionError):
        evaluate_static(SZ, SX, sample_haar_state(3, 0))
    with pytest.raises(DimensionError):
        evaluate_timedep(explicit_a(), HamiltonianSchedule.constant(SZ), 0.0, sample_haar_state(3, 0))


@given(dims, seeds, st.floats(0.1, 10))
def test_static_inequality_and_chain(dim, seed, hbar):
    h, a, psi = random_case(dim, seed)
    r = evaluate_static(h, a, psi, hbar)
    tol = 1e-9 * max(1, r.lhs)
    assert r.slack >= -tol
    assert r.lhs >= r.rhs_cs - tol
    assert r.rhs_cs >= r.rhs_comm - 1e-9 * max(1, r.rhs_cs)
    assert abs(r.rhs_comm - r.rhs_double) <= 1e-10 * max(1, r.rhs_comm)
    assert math.isclose(r.rhs_cs ** 2, r.sym_part ** 2 + r.antisym_part ** 2,
                        rel_tol=1e-9, abs_tol=1e-14)


@given(dims, seeds, st.sampled_from([-1e6, -1e3, -1.0, 1.0, 1e3, 1e6]))
def test_static_shift_invariance(dim, seed, c):
    h, a, psi = random_case(dim, seed)
    r0 = evaluate_static(h, a, psi)
    r1 = evaluate_static(h, a.shifted(c), psi)
    assert report_fields_close(r0, r1, 1e-9)


@given(dims, seeds)
def test_hbar_scaling(dim, seed):
    h, a, psi = random_case(dim, seed)
    ref = evaluate_static(h, a, psi, 1.0)
    for hbar in (0.5, 2.0):
        r = evaluate_static(HermitianOperator(hbar * h.matrix), a, psi, hbar)
        assert r.rhs_double == pytest.approx(ref.rhs_double, rel=1e-10, abs=1e-14)
        assert r.rhs_comm == pytest.approx(ref.rhs_comm, rel=1e-10, abs=1e-14)


# --- time dependent ----------------------------------------------------------


@given(st.integers(2, 5), seeds, st.floats(-3, 3))
def test_timedep_reduces_to_static(dim, seed, t):
    h, a, psi = random_case(dim, seed)
    r_t = evaluate_timedep(OperatorSchedule.constant(a), HamiltonianSchedule.constant(h), t, psi)
    r_s = evaluate_static(h, a, psi, t=t)
    assert report_fields_close(r_t, r_s, 1e-12)


def test_timedep_spin_at_zero():
    h = HamiltonianSchedule.constant(MINUS_SZ)
    r = evaluate_timedep(explicit_a(), h, 0.0, named_state("+z"))
    assert r.rhs_comm == pytest.approx(0.5, abs=1e-15)
    assert r.lhs == pytest.approx(0.5, abs=1e-15)
    assert abs(r.slack) <= 1e-15
    r = evaluate_timedep(explicit_a(), h, 0.0, named_state("+x"))
    assert r.rhs_comm <= 1e-15 and r.lhs <= 1e-15


@given(seeds, st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0, 10), st.booleans())
def test_timedep_spin_inequality(seed, gamma, tau, t, sinusoidal):
    sx, sy, sz = spin_operators(1.0)
    field = Sinusoid(2.0, 1.3, 0.2) if sinusoidal else Ramp(0.7, -1.0)
    h = HamiltonianSchedule(((field, HermitianOperator(-gamma * sz.matrix)),))
    a = explicit_a(tau)
    psi = sample_haar_state(2, seed)
    r = evaluate_timedep(a, h, t, psi)
    assert r.slack >= -1e-9 * max(1, r.lhs)
    assert abs(r.rhs_comm - r.rhs_double) <= 1e-10 * max(1, r.rhs_comm)
    z = combined_bound_expectation(a, h, t, psi)
    assert abs(z.real) <= 1e-10 * (1 + abs(z.imag))


@given(st.integers(2, 5), seeds, st.floats(-2, 2))
def test_generic_timedep(dim, seed, t):
    a0, a1, psi = random_case(dim, seed)
    h0 = sample_hermitian(dim, seed + 7)
    a = OperatorSchedule(((Constant(1.0), a0), (Sinusoid(1.0, 2.0), a1)))
    h = HamiltonianSchedule(((Ramp(0.5, 1.0), h0),))
    r = evaluate_timedep(a, h, t, psi)
    assert all_links_hold(r)
    z = combined_bound_expectation(a, h, t, psi)
    assert abs(z.real) <= 1e-10 * (1 + abs(z.imag))


# --- chain diagnostics -------------------------------------------------------


def test_chain_on_saturating_report():
    links = chain_diagnostics(evaluate_static(MINUS_SZ, SX, named_state("+z")))
    assert [link.name for link in links] == [
        "cauchy_schwarz", "drop_anticommutator", "double_commutator_identity"]
    for link in links:
        assert link.holds and abs(link.margin) <= 1e-10


def test_chain_on_conserved_report():
    r = evaluate_static(SZ, SZ, named_state("+x"))
    assert all(link.holds for link in chain_diagnostics(r)) and r.rhs_comm == 0


def test_chain_random_dim4():
    for seed in range(200):
        h, a, psi = random_case(4, seed * 3)
        assert all_links_hold(evaluate_static(h, a, psi))


def test_chain_flags_a_broken_report():
    r = evaluate_static(MINUS_SZ, SX, named_state("+z"))
    from dataclasses import replace
    bad = replace(r, lhs=0.1)
    assert not chain_diagnostics(bad)[0].holds
    assert not np.isnan(chain_diagnostics(bad)[0].margin)
