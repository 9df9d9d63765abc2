"""Spin-1/2 in a z-directed field ``B(t)``.

Two scenarios, both with ``H(t) = -gamma B(t) S_z``:

* static observable ``A = S_x``;
* explicit-time observable ``A(t) = S_x + (t / tau) S_y``.

Closed forms for both sides of the relation are provided so the generic
pipeline in ``bounds`` can be checked against them. Basis: ``|+z> = (1, 0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .bounds import UncertaintyReport, evaluate_static, evaluate_timedep
from .dynamics import (
    Constant,
    HamiltonianSchedule,
    OperatorSchedule,
    PhysicalConstants,
    Ramp,
    Waveform,
)
from .operators import HermitianOperator, PureState, expectation, uncertainty

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

FACTOR_TOL = 1e-12

NAMED_STATES = {
    "+z": np.array([1, 0], dtype=complex),
    "-z": np.array([0, 1], dtype=complex),
    "+x": np.array([1, 1], dtype=complex) / math.sqrt(2),
    "-x": np.array([1, -1], dtype=complex) / math.sqrt(2),
    "+y": np.array([1, 1j], dtype=complex) / math.sqrt(2),
    "-y": np.array([1, -1j], dtype=complex) / math.sqrt(2),
}


def named_state(name: str) -> PureState:
    try:
        return PureState(NAMED_STATES[name])
    except KeyError:
        raise KeyError(f"unknown named state {name!r}; choose from {sorted(NAMED_STATES)}")


def spin_operators(hbar: float = 1.0):
    """``(S_x, S_y, S_z)`` with ``S_k = (hbar / 2) sigma_k``."""
    if not hbar > 0:
        raise ValueError("hbar must be positive")
    return tuple(HermitianOperator(0.5 * hbar * p) for p in (PAULI_X, PAULI_Y, PAULI_Z))


@dataclass(frozen=True)
class SpinHalfScenario:
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    field: Waveform = Constant(1.0)

    @property
    def ops(self):
        return spin_operators(self.constants.hbar)

    def hamiltonian(self) -> HamiltonianSchedule:
        _, _, sz = self.ops
        g = self.constants.gamma
        f = self.field
        # fold -gamma into the operator so the waveform stays B(t) itself
        return HamiltonianSchedule(((f, HermitianOperator(-g * sz.matrix)),))

    def observable(self) -> OperatorSchedule:
        sx, _, _ = self.ops
        return OperatorSchedule.constant(sx)

    def evaluate(self, t: float, psi: PureState) -> UncertaintyReport:
        h = self.hamiltonian().at(t)
        return evaluate_static(h, self.ops[0], psi, self.constants.hbar, t=t)


@dataclass(frozen=True)
class ExplicitTimeScenario:
    base: SpinHalfScenario = field(default_factory=SpinHalfScenario)
    tau: float = 1.0

    def __post_init__(self):
        if not self.tau > 0:
            raise ValueError("tau must be positive")

    @property
    def constants(self) -> PhysicalConstants:
        return self.base.constants

    @property
    def ops(self):
        return self.base.ops

    def hamiltonian(self) -> HamiltonianSchedule:
        return self.base.hamiltonian()

    def observable(self) -> OperatorSchedule:
        sx, sy, _ = self.ops
        return OperatorSchedule(((Constant(1.0), sx), (Ramp(1.0 / self.tau), sy)))

    def evaluate(self, t: float, psi: PureState) -> UncertaintyReport:
        return evaluate_timedep(
            self.observable(), self.hamiltonian(), t, psi, self.constants.hbar
        )


def static_closed_forms(s: SpinHalfScenario, t: float, psi: PureState) -> tuple[float, float]:
    """``(|gamma B| dS_x dS_y, |gamma hbar B| |<S_z>| / 2)``."""
    sx, sy, sz = s.ops
    gb = s.constants.gamma * s.field(t)
    lhs = abs(gb) * uncertainty(sx, psi) * uncertainty(sy, psi)
    rhs = 0.5 * abs(gb * s.constants.hbar) * abs(expectation(sz, psi))
    return lhs, rhs


def bracket(s: ExplicitTimeScenario, t: float) -> float:
    """``1/tau + gamma B(t) (1 + t^2/tau^2)``."""
    tau = s.tau
    return 1.0 / tau + s.constants.gamma * s.base.field(t) * (1.0 + (t / tau) ** 2)


def timedep_closed_forms(
    s: ExplicitTimeScenario, t: float, psi: PureState
) -> tuple[float, float]:
    """``(rhs_closed, bracket)`` for the explicit-time observable.

    No closed-form left-hand side is given here for ``t != 0``; that side is
    only checked numerically.
    """
    b = bracket(s, t)
    sz = s.ops[2]
    rhs = 0.5 * s.constants.hbar * abs(expectation(sz, psi)) * abs(b)
    return rhs, b


class Reduction(NamedTuple):
    reduced_lhs: float
    reduced_rhs: float
    factor: float
    degenerate: bool


def reduction_check(s, t: float, psi: PureState) -> Reduction:
    """Cancel the common factor from both sides, leaving ``dS_x dS_y >= hbar |<S_z>| / 2``.

    The factor is ``|gamma B(t)|`` for the static scenario and
    ``|1/tau + gamma B(0)|`` for the explicit-time one, which only reduces at
    ``t = 0``. When the factor vanishes nothing is divided and the reduced
    values are NaN.
    """
    if isinstance(s, ExplicitTimeScenario):
        if t != 0:
            raise ValueError("explicit-time reduction applies only at t = 0")
        factor = abs(1.0 / s.tau + s.constants.gamma * s.base.field(0.0))
    else:
        factor = abs(s.constants.gamma * s.field(t))
    if factor < FACTOR_TOL:
        return Reduction(math.nan, math.nan, factor, True)
    report = s.evaluate(t, psi)
    return Reduction(report.lhs / factor, report.rhs_comm / factor, factor, False)
