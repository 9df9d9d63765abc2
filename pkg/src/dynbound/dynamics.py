"""Time-dependent operators, Heisenberg-picture derivatives and an RK4 propagator."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (
    DimensionError,
    NonHermitianResult,
    StepTooLarge,
    WaveformDomainError,
)
from .operators import (
    HERMITIAN_TOL,
    HermitianOperator,
    PureState,
    as_matrix,
    commutator,
    hermiticity_defect,
)

# --- waveforms -------------------------------------------------------------


@dataclass(frozen=True)
class Constant:
    value: float

    def __call__(self, t: float) -> float:
        return float(self.value)

    def derivative(self, t: float) -> float:
        return 0.0


@dataclass(frozen=True)
class Sinusoid:
    """``amplitude * sin(angular_frequency * t + phase)``."""

    amplitude: float
    angular_frequency: float
    phase: float = 0.0

    def __call__(self, t: float) -> float:
        return self.amplitude * math.sin(self.angular_frequency * t + self.phase)

    def derivative(self, t: float) -> float:
        w = self.angular_frequency
        return self.amplitude * w * math.cos(w * t + self.phase)


@dataclass(frozen=True)
class Ramp:
    slope: float
    intercept: float = 0.0

    def __call__(self, t: float) -> float:
        return self.slope * t + self.intercept

    def derivative(self, t: float) -> float:
        return float(self.slope)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Linear interpolation through ``samples = ((t0, v0), (t1, v1), ...)``.

    Knot times must be strictly increasing. At an interior knot the derivative
    is the slope of the segment to its left.
    """

    samples: tuple[tuple[float, float], ...]

    def __post_init__(self):
        samples = tuple((float(t), float(v)) for t, v in self.samples)
        if len(samples) < 2:
            raise ValueError("piecewise_linear needs at least two samples")
        times = [t for t, _ in samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("piecewise_linear sample times must be strictly increasing")
        object.__setattr__(self, "samples", samples)

    @property
    def domain(self) -> tuple[float, float]:
        return self.samples[0][0], self.samples[-1][0]

    def _segment(self, t: float) -> int:
        lo, hi = self.domain
        if not lo <= t <= hi:
            raise WaveformDomainError(f"t={t} outside piecewise_linear domain [{lo}, {hi}]")
        times = [s[0] for s in self.samples]
        # index k of the segment [t_k, t_{k+1}] with the left-segment rule at knots
        k = bisect.bisect_left(times, t) - 1
        return min(max(k, 0), len(times) - 2)

    def __call__(self, t: float) -> float:
        k = self._segment(t)
        (t0, v0), (t1, v1) = self.samples[k], self.samples[k + 1]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def derivative(self, t: float) -> float:
        k = self._segment(t)
        (t0, v0), (t1, v1) = self.samples[k], self.samples[k + 1]
        return (v1 - v0) / (t1 - t0)


Waveform = Union[Constant, Sinusoid, Ramp, PiecewiseLinear]


# --- schedules -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OperatorSchedule:
    """``A(t) = sum_k f_k(t) A_k`` with real waveform coefficients ``f_k``."""

    terms: tuple[tuple[Waveform, HermitianOperator], ...]

    def __post_init__(self):
        terms = tuple((f, op) for f, op in self.terms)
        if not terms:
            raise ValueError("schedule needs at least one term")
        dims = {op.dim for _, op in terms}
        if len(dims) != 1:
            raise DimensionError(f"schedule terms have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def constant(cls, op: HermitianOperator):
        return cls(((Constant(1.0), op),))

    @classmethod
    def zero(cls, dim: int):
        return cls(((Constant(0.0), HermitianOperator.zeros(dim)),))

    @property
    def dim(self) -> int:
        return self.terms[0][1].dim

    @property
    def is_static(self) -> bool:
        return all(isinstance(f, Constant) for f, _ in self.terms)

    def matrix_at(self, t: float) -> np.ndarray:
        return sum(f(t) * op.matrix for f, op in self.terms)

    def partial_matrix_at(self, t: float) -> np.ndarray:
        return sum(f.derivative(t) * op.matrix for f, op in self.terms)

    def at(self, t: float) -> HermitianOperator:
        return HermitianOperator(self.matrix_at(t))

    def partial(self, t: float) -> HermitianOperator:
        """Explicit time derivative, exact from the waveform derivatives."""
        return HermitianOperator(self.partial_matrix_at(t))


class HamiltonianSchedule(OperatorSchedule):
    """Same representation as ``OperatorSchedule``; kept distinct for readability."""


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0
    gamma: float = 1.0
    tau: float = 1.0

    def __post_init__(self):
        if not self.hbar > 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")


# --- derivatives -----------------------------------------------------------


def _certified(m: np.ndarray, scale: float) -> HermitianOperator:
    """Check ``m`` is Hermitian up to roundoff at ``scale``, then project onto it."""
    defect = hermiticity_defect(m)
    if defect > HERMITIAN_TOL * max(1.0, scale):
        raise NonHermitianResult(f"derived operator is not Hermitian (defect {defect:.3e})")
    return HermitianOperator(0.5 * (m + m.conj().T))


def _scale(*mats: np.ndarray) -> float:
    return float(np.prod([np.max(np.abs(m)) for m in mats]))


def heisenberg_derivative(
    h: HermitianOperator, a: HermitianOperator, hbar: float = 1.0
) -> HermitianOperator:
    """``(i/hbar) [H, A]``."""
    if not hbar > 0:
        raise ValueError("hbar must be positive")
    hm, am = as_matrix(h), as_matrix(a)
    m = (1j / hbar) * commutator(hm, am)
    return _certified(m, _scale(hm, am) / hbar)


def double_commutator(h: HermitianOperator, a: HermitianOperator) -> HermitianOperator:
    """``[A, [H, A]]``."""
    hm, am = as_matrix(h), as_matrix(a)
    m = commutator(am, commutator(hm, am))
    return _certified(m, _scale(hm, am, am))


def total_derivative(
    a: OperatorSchedule, h: OperatorSchedule, t: float, hbar: float = 1.0
) -> HermitianOperator:
    """``dA/dt = dA/dt|explicit + (i/hbar) [H(t), A(t)]``."""
    if a.dim != h.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {h.dim}")
    heis = heisenberg_derivative(h.at(t), a.at(t), hbar)
    if a.is_static:
        return heis
    return HermitianOperator(a.partial_matrix_at(t) + heis.matrix)


# --- propagation -----------------------------------------------------------

RENORM_TOL = 1e-12
MAX_STEP_DRIFT = 1e-6


def propagate_state(
    h: OperatorSchedule,
    psi0: PureState,
    t0: float,
    t1: float,
    step: float,
    hbar: float = 1.0,
) -> PureState:
    """Integrate ``d psi/dt = -(i/hbar) H(t) psi`` from t0 to t1 with fixed-step RK4.

    The step is shrunk so that an integer number of steps lands exactly on t1.
    """
    if t1 < t0:
        raise ValueError(f"t1 ({t1}) must be >= t0 ({t0})")
    if not step > 0:
        raise ValueError("step must be positive")
    if h.dim != psi0.dim:
        raise DimensionError(f"dimension mismatch: {h.dim} vs {psi0.dim}")
    if t1 == t0:
        return psi0
    n = max(1, math.ceil((t1 - t0) / step - 1e-9))
    dt = (t1 - t0) / n
    c = -1j / hbar
    psi = np.array(psi0.amplitudes)
    for k in range(n):
        t = t0 + k * dt
        h0 = h.matrix_at(t)
        hm = h.matrix_at(t + 0.5 * dt)
        h1 = h.matrix_at(t + dt)
        k1 = c * (h0 @ psi)
        k2 = c * (hm @ (psi + 0.5 * dt * k1))
        k3 = c * (hm @ (psi + 0.5 * dt * k2))
        k4 = c * (h1 @ (psi + dt * k3))
        psi = psi + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        norm = np.linalg.norm(psi)
        drift = abs(norm - 1.0)
        if drift > MAX_STEP_DRIFT:
            raise StepTooLarge(f"norm drift {drift:.3e} at t={t + dt}; reduce the step")
        if drift > RENORM_TOL:
            psi = psi / norm
    return PureState(psi)
