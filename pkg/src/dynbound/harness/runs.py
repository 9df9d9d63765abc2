"""The four run modes: check, sweep, fuzz and saturate."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import minimize

from ..bounds import (
    UncertaintyReport,
    all_links_hold,
    evaluate_static,
    evaluate_timedep,
)
from ..dynamics import (
    OperatorSchedule,
    PhysicalConstants,
    Ramp,
    Sinusoid,
)
from ..errors import ConfigError, NoNonDegenerateCandidate
from ..operators import HermitianOperator, PureState, expectation
from ..spin import ExplicitTimeScenario, SpinHalfScenario, named_state
from .config import RunConfig, waveform_to_dict
from .sampling import child_seed, mix64, sample_haar_state, sample_hermitian

# --- problem assembly ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Problem:
    observable: OperatorSchedule
    hamiltonian: OperatorSchedule
    hbar: float
    sz: Optional[HermitianOperator] = None

    @property
    def dim(self) -> int:
        return self.observable.dim

    def evaluate(self, t: float, psi: PureState) -> UncertaintyReport:
        if self.observable.is_static:
            return evaluate_static(
                self.hamiltonian.at(t), self.observable.at(t), psi, self.hbar, t=t
            )
        return evaluate_timedep(self.observable, self.hamiltonian, t, psi, self.hbar)

    def exp_sz(self, psi: PureState) -> Optional[float]:
        return None if self.sz is None else expectation(self.sz, psi)


def spin_scenario(cfg: RunConfig):
    base = SpinHalfScenario(cfg.constants, cfg.field_waveform)
    if cfg.scenario == "explicit_time_spin":
        return ExplicitTimeScenario(base, cfg.constants.tau)
    return base


def build_problem(cfg: RunConfig) -> Problem:
    hbar = cfg.constants.hbar
    if cfg.scenario == "generic":
        if cfg.hamiltonian is None or cfg.observable is None:
            raise ConfigError("generic scenario requires explicit operators", "operators")
        return Problem(
            OperatorSchedule.constant(cfg.observable),
            OperatorSchedule.constant(cfg.hamiltonian),
            hbar,
        )
    s = spin_scenario(cfg)
    return Problem(s.observable(), s.hamiltonian(), hbar, s.ops[2])


def resolve_state(cfg: RunConfig, dim: int) -> PureState:
    spec = cfg.state
    if spec.named is not None:
        psi = named_state(spec.named)
    elif spec.amplitudes is not None:
        psi = PureState.normalized(spec.amplitudes)
    else:
        psi = sample_haar_state(dim, spec.haar_random)
    if psi.dim != dim:
        raise ConfigError(f"state has dimension {psi.dim}, problem needs {dim}", "state")
    return psi


# --- check / sweep ---------------------------------------------------------


def run_check(cfg: RunConfig) -> UncertaintyReport:
    problem = build_problem(cfg)
    return problem.evaluate(cfg.time, resolve_state(cfg, problem.dim))


class TraceRow(NamedTuple):
    t: float
    lhs: float
    rhs_comm: float
    rhs_cs: float
    slack: float
    delta_A: float
    delta_dAdt: float
    exp_Sz: Optional[float]
    degenerate: bool = False


@dataclass(frozen=True)
class TimeTrace:
    rows: tuple[TraceRow, ...] = ()

    def __post_init__(self):
        ts = [r.t for r in self.rows]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("trace rows must be strictly increasing in t")


def run_sweep(cfg: RunConfig) -> TimeTrace:
    problem = build_problem(cfg)
    psi = resolve_state(cfg, problem.dim)
    exp_sz = problem.exp_sz(psi)
    rows = []
    for t in cfg.time_grid.times():
        r = problem.evaluate(float(t), psi)
        rows.append(TraceRow(r.t, r.lhs, r.rhs_comm, r.rhs_cs, r.slack,
                             r.delta_A, r.delta_dAdt, exp_sz, r.degenerate))
    return TimeTrace(tuple(rows))


# --- fuzz ------------------------------------------------------------------

FUZZ_T_MAX = 10.0


def _serialize_matrix(m: np.ndarray) -> list:
    return [[[z.real, z.imag] for z in row] for row in m]


def _static_trial(seed: int, index: int, dim_min: int, dim_max: int, hbar: float):
    child = child_seed(seed, index)
    rng = np.random.default_rng(child)
    dim = int(rng.integers(dim_min, dim_max + 1))
    h = sample_hermitian(dim, mix64(child ^ 1))
    a = sample_hermitian(dim, mix64(child ^ 2))
    psi = sample_haar_state(dim, mix64(child ^ 3))
    report = evaluate_static(h, a, psi, hbar)

    def inputs():
        return {
            "hbar": hbar,
            "hamiltonian": _serialize_matrix(h.matrix),
            "observable": _serialize_matrix(a.matrix),
            "state": [[z.real, z.imag] for z in psi.amplitudes],
        }

    return child, dim, report, inputs


def random_spin_instance(child: int, explicit_time: bool, hbar: float):
    """Random spin-1/2 scenario, evaluation time and state drawn from ``child``.

    ``|gamma|`` and ``tau`` are uniform in [0.1, 10], gamma has a random sign,
    B(t) is a random sinusoid or ramp and t is uniform in [0, FUZZ_T_MAX].
    """
    rng = np.random.default_rng(child)
    gamma = float(rng.uniform(0.1, 10.0) * rng.choice([-1.0, 1.0]))
    tau = float(rng.uniform(0.1, 10.0))
    if rng.random() < 0.5:
        field = Sinusoid(float(rng.uniform(-5, 5)), float(rng.uniform(0.1, 5)),
                         float(rng.uniform(0, 2 * math.pi)))
    else:
        field = Ramp(float(rng.uniform(-2, 2)), float(rng.uniform(-2, 2)))
    t = float(rng.uniform(0.0, FUZZ_T_MAX))
    psi = sample_haar_state(2, mix64(child ^ 1))
    base = SpinHalfScenario(PhysicalConstants(hbar=hbar, gamma=gamma, tau=tau), field)
    scenario = ExplicitTimeScenario(base, tau) if explicit_time else base
    return scenario, t, psi


def _spin_trial(seed: int, index: int, explicit_time: bool, hbar: float):
    child = child_seed(seed, index)
    scenario, t, psi = random_spin_instance(child, explicit_time, hbar)
    report = scenario.evaluate(t, psi)
    c = scenario.constants

    def inputs():
        return {
            "hbar": c.hbar, "gamma": c.gamma, "tau": c.tau, "t": t,
            "field_waveform": waveform_to_dict(scenario.hamiltonian().terms[0][0]),
            "state": [[z.real, z.imag] for z in psi.amplitudes],
        }

    return child, 2, report, inputs


def _run_trials(scenario: str, seed: int, indices, dim_min: int, dim_max: int, hbar: float):
    out = []
    for i in indices:
        if scenario == "generic":
            child, dim, report, inputs = _static_trial(seed, i, dim_min, dim_max, hbar)
        else:
            child, dim, report, inputs = _spin_trial(
                seed, i, scenario == "explicit_time_spin", hbar
            )
        violation = None
        if report.violates:
            violation = {"trial": i, "seed": child, "dim": dim, "min_slack": report.slack,
                         "lhs": report.lhs, "inputs": inputs()}
        out.append((i, report.slack, report.lhs, all_links_hold(report), violation))
    return out


@dataclass
class FuzzReport:
    scenario: str
    seed: int
    trials: int
    violations: list
    min_slack_seen: float
    min_slack_lhs: float
    chain_failures: list
    slacks: list
    wall_time: float

    def as_dict(self) -> dict:
        return asdict(self)

    def content(self) -> dict:
        """Everything except wall time; identical for any worker count."""
        d = self.as_dict()
        d.pop("wall_time")
        return d


def run_fuzz(cfg: RunConfig, workers: int = 1) -> FuzzReport:
    """Randomized check of the inequality.

    ``generic`` draws GUE ``H``, ``A`` and a Haar state per trial; the spin
    scenarios draw random constants, field, time and state. Trial ``i`` uses
    the child seed ``mix64(seed XOR i)`` so results do not depend on ``workers``.
    """
    f = cfg.fuzz
    hbar = cfg.constants.hbar
    start = time.perf_counter()
    indices = range(f.trials)
    if workers <= 1:
        results = _run_trials(cfg.scenario, f.seed, indices, f.dim_min, f.dim_max, hbar)
    else:
        chunks = [indices[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_trials, cfg.scenario, f.seed, list(c),
                                   f.dim_min, f.dim_max, hbar) for c in chunks]
            results = [r for fut in futures for r in fut.result()]
        results.sort(key=lambda r: r[0])
    slacks = [r[1] for r in results]
    k = int(np.argmin(slacks))
    return FuzzReport(
        scenario=cfg.scenario,
        seed=f.seed,
        trials=f.trials,
        violations=[r[4] for r in results if r[4] is not None],
        min_slack_seen=slacks[k],
        min_slack_lhs=results[k][2],
        chain_failures=[r[0] for r in results if not r[3]],
        slacks=slacks,
        wall_time=time.perf_counter() - start,
    )


# --- saturation search -----------------------------------------------------

DEGENERATE_PENALTY = 1e6


@dataclass(frozen=True)
class SaturationResult:
    state: PureState
    report: UncertaintyReport
    evaluations: int

    def as_dict(self) -> dict:
        return {
            "state": [[z.real, z.imag] for z in self.state.amplitudes],
            "evaluations": self.evaluations,
            **self.report.as_dict(),
        }


def _params_to_state(x: np.ndarray, dim: int) -> Optional[PureState]:
    v = x[:dim] + 1j * x[dim:]
    norm = np.linalg.norm(v)
    if not norm > 1e-12:
        return None
    return PureState(v / norm)


def find_min_slack(cfg: RunConfig) -> tuple[PureState, UncertaintyReport]:
    """Search for the state minimizing the slack at ``cfg.time``."""
    res = saturation_search(cfg)
    return res.state, res.report


def saturation_search(cfg: RunConfig) -> SaturationResult:
    """Nelder-Mead from ``restarts`` Haar-random starts over 2*dim real parameters.

    Degenerate probes (lhs below the degeneracy threshold) are penalized and
    never kept as the answer. The best non-degenerate probe over all restarts
    is returned.
    """
    problem = build_problem(cfg)
    s = cfg.saturate
    dim = problem.dim
    best: list = [math.inf, None, None]
    count = [0]

    def objective(x):
        count[0] += 1
        psi = _params_to_state(x, dim)
        if psi is None:
            return DEGENERATE_PENALTY
        report = problem.evaluate(cfg.time, psi)
        if report.degenerate:
            return DEGENERATE_PENALTY
        if report.slack < best[0]:
            best[:] = [report.slack, psi, report]
        return report.slack

    for r in range(s.restarts):
        start = sample_haar_state(dim, child_seed(s.seed, r)).amplitudes
        x0 = np.concatenate([start.real, start.imag])
        minimize(objective, x0, method="Nelder-Mead",
                 options={"maxiter": s.max_iterations, "xatol": 1e-12, "fatol": 1e-15})
    if best[1] is None:
        raise NoNonDegenerateCandidate(
            f"all {count[0]} probes were degenerate (both sides vanish)"
        )
    return SaturationResult(best[1], best[2], count[0])


__all__ = [
    "Problem", "build_problem", "resolve_state", "run_check", "TraceRow", "TimeTrace",
    "run_sweep", "FuzzReport", "run_fuzz", "random_spin_instance", "find_min_slack",
    "saturation_search", "SaturationResult",
]
