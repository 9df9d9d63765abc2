"""JSON run configuration.

Example::

    {
      "mode": "sweep",
      "scenario": "explicit_time_spin",
      "constants": {"hbar": 1.0, "gamma": 1.0, "tau": 1.0},
      "field_waveform": {"kind": "sinusoid", "amplitude": 1.0, "angular_frequency": 2.0},
      "state": {"named": "+z"},
      "time_grid": {"t_start": 0.0, "t_end": 2.0, "num_points": 21},
      "output": {"format": "csv", "path": null}
    }

Unknown keys anywhere are rejected. Complex numbers are written either as a
plain number or as ``[re, im]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Any, Optional

import numpy as np

from ..dynamics import Constant, PhysicalConstants, PiecewiseLinear, Ramp, Sinusoid, Waveform
from ..errors import ConfigError
from ..operators import HermitianOperator, PureState
from ..spin import NAMED_STATES

MODES = ("check", "sweep", "fuzz", "saturate")
SCENARIOS = ("static_spin", "explicit_time_spin", "generic")


@dataclass(frozen=True)
class StateSpec:
    named: Optional[str] = None
    amplitudes: Optional[tuple[complex, ...]] = None
    haar_random: Optional[int] = None


@dataclass(frozen=True)
class TimeGrid:
    t_start: float = 0.0
    t_end: float = 1.0
    num_points: int = 11

    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.num_points)


@dataclass(frozen=True)
class FuzzSettings:
    trials: int = 1000
    dim_min: int = 2
    dim_max: int = 8
    seed: int = 0


@dataclass(frozen=True)
class SaturateSettings:
    restarts: int = 20
    max_iterations: int = 500
    target_slack: float = 1e-6
    seed: int = 0


@dataclass(frozen=True)
class OutputSettings:
    format: str = "csv"
    path: Optional[str] = None


@dataclass(frozen=True, eq=False)
class RunConfig:
    mode: str
    scenario: str
    constants: PhysicalConstants = field(default_factory=PhysicalConstants)
    field_waveform: Waveform = Constant(1.0)
    state: StateSpec = field(default_factory=lambda: StateSpec(named="+z"))
    time: float = 0.0
    time_grid: TimeGrid = field(default_factory=TimeGrid)
    fuzz: FuzzSettings = field(default_factory=FuzzSettings)
    saturate: SaturateSettings = field(default_factory=SaturateSettings)
    hamiltonian: Optional[HermitianOperator] = None
    observable: Optional[HermitianOperator] = None
    output: OutputSettings = field(default_factory=OutputSettings)

    def with_seed(self, seed: int) -> RunConfig:
        """Override every seed in the config (fuzz, saturate, haar state)."""
        state = self.state
        if state.haar_random is not None:
            state = replace(state, haar_random=seed)
        return replace(
            self,
            state=state,
            fuzz=replace(self.fuzz, seed=seed),
            saturate=replace(self.saturate, seed=seed),
        )

    def with_hbar(self, hbar: float) -> RunConfig:
        if not hbar > 0:
            raise ConfigError("must be positive", "constants.hbar")
        return replace(self, constants=replace(self.constants, hbar=hbar))


# --- parsing helpers -------------------------------------------------------


def _take(d: dict, path: str, allowed: dict[str, type | tuple]) -> dict:
    if not isinstance(d, dict):
        raise ConfigError("expected an object", path or None)
    out = {}
    for key, value in d.items():
        where = f"{path}.{key}" if path else key
        if key not in allowed:
            raise ConfigError(f"unknown key (allowed: {', '.join(sorted(allowed))})", where)
        kind = allowed[key]
        if kind is float:
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"expected a number, got {value!r}", where)
            value = float(value)
        elif kind is int:
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"expected an integer, got {value!r}", where)
        elif kind is str:
            if not isinstance(value, str):
                raise ConfigError(f"expected a string, got {value!r}", where)
        out[key] = value
    return out


def _complex(x, where: str) -> complex:
    if isinstance(x, bool):
        raise ConfigError(f"expected a number or [re, im], got {x!r}", where)
    if isinstance(x, (int, float)):
        return complex(x)
    if (
        isinstance(x, list)
        and len(x) == 2
        and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in x)
    ):
        return complex(x[0], x[1])
    raise ConfigError(f"expected a number or [re, im], got {x!r}", where)


def _matrix(rows, where: str) -> HermitianOperator:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise ConfigError("expected a square matrix as a list of rows", where)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ConfigError("matrix is not square", where)
    m = np.array([[_complex(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)]
                  for i, r in enumerate(rows)])
    try:
        return HermitianOperator(m)
    except ValueError as exc:
        raise ConfigError(str(exc), where) from None


def parse_waveform(d: Any, where: str = "field_waveform") -> Waveform:
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError("expected an object with a 'kind' key", where)
    kind = d["kind"]
    rest = {k: v for k, v in d.items() if k != "kind"}
    if kind == "constant":
        v = _take(rest, where, {"value": float})
        return Constant(v.get("value", 1.0))
    if kind == "sinusoid":
        v = _take(rest, where, {"amplitude": float, "angular_frequency": float, "phase": float})
        return Sinusoid(v.get("amplitude", 1.0), v.get("angular_frequency", 1.0),
                        v.get("phase", 0.0))
    if kind == "ramp":
        v = _take(rest, where, {"slope": float, "intercept": float})
        return Ramp(v.get("slope", 1.0), v.get("intercept", 0.0))
    if kind == "piecewise_linear":
        v = _take(rest, where, {"samples": list})
        samples = v.get("samples")
        if not samples or not all(
            isinstance(s, list) and len(s) == 2
            and all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in s)
            for s in samples
        ):
            raise ConfigError("samples must be a list of [t, value] pairs", f"{where}.samples")
        try:
            return PiecewiseLinear(tuple(tuple(s) for s in samples))
        except ValueError as exc:
            raise ConfigError(str(exc), f"{where}.samples") from None
    raise ConfigError(
        f"unknown kind {kind!r} (constant, sinusoid, ramp, piecewise_linear)", f"{where}.kind"
    )


def waveform_to_dict(w: Waveform) -> dict:
    if isinstance(w, Constant):
        return {"kind": "constant", "value": w.value}
    if isinstance(w, Sinusoid):
        return {"kind": "sinusoid", "amplitude": w.amplitude,
                "angular_frequency": w.angular_frequency, "phase": w.phase}
    if isinstance(w, Ramp):
        return {"kind": "ramp", "slope": w.slope, "intercept": w.intercept}
    return {"kind": "piecewise_linear", "samples": [list(s) for s in w.samples]}


def _state(d: Any) -> StateSpec:
    v = _take(d, "state", {"named": str, "amplitudes": list, "haar_random": int})
    if len(v) != 1:
        raise ConfigError("give exactly one of named, amplitudes, haar_random", "state")
    if "named" in v and v["named"] not in NAMED_STATES:
        raise ConfigError(f"unknown named state (choose from {sorted(NAMED_STATES)})",
                          "state.named")
    if "amplitudes" in v:
        amps = tuple(_complex(x, f"state.amplitudes[{i}]") for i, x in enumerate(v["amplitudes"]))
        try:
            PureState.normalized(amps)
        except ValueError as exc:
            raise ConfigError(str(exc), "state.amplitudes") from None
        return StateSpec(amplitudes=amps)
    return StateSpec(**v)


def parse_config(d: Any) -> RunConfig:
    """Build and validate a RunConfig from a decoded JSON object."""
    top = _take(d, "", {
        "mode": str, "scenario": str, "constants": dict, "field_waveform": dict,
        "state": dict, "time": float, "time_grid": dict, "fuzz": dict, "saturate": dict,
        "operators": dict, "output": dict,
    })
    for key in ("mode", "scenario"):
        if key not in top:
            raise ConfigError("required key missing", key)
    if top["mode"] not in MODES:
        raise ConfigError(f"must be one of {MODES}", "mode")
    if top["scenario"] not in SCENARIOS:
        raise ConfigError(f"must be one of {SCENARIOS}", "scenario")
    kw: dict[str, Any] = {"mode": top["mode"], "scenario": top["scenario"]}

    if "constants" in top:
        c = _take(top["constants"], "constants", {"hbar": float, "gamma": float, "tau": float})
        for key in ("hbar", "tau"):
            if key in c and not c[key] > 0:
                raise ConfigError("must be positive", f"constants.{key}")
        kw["constants"] = PhysicalConstants(**c)
    if "field_waveform" in top:
        kw["field_waveform"] = parse_waveform(top["field_waveform"])
    if "state" in top:
        kw["state"] = _state(top["state"])
    if "time" in top:
        kw["time"] = top["time"]
    if "time_grid" in top:
        g = _take(top["time_grid"], "time_grid",
                  {"t_start": float, "t_end": float, "num_points": int})
        kw["time_grid"] = TimeGrid(**g)
    if "fuzz" in top:
        f = _take(top["fuzz"], "fuzz",
                  {"trials": int, "dim_min": int, "dim_max": int, "seed": int})
        kw["fuzz"] = FuzzSettings(**f)
    if "saturate" in top:
        s = _take(top["saturate"], "saturate", {
            "restarts": int, "max_iterations": int, "target_slack": float, "seed": int})
        kw["saturate"] = SaturateSettings(**s)
    if "operators" in top:
        o = _take(top["operators"], "operators", {"hamiltonian": list, "observable": list})
        for key in ("hamiltonian", "observable"):
            if key not in o:
                raise ConfigError("required key missing", f"operators.{key}")
        kw["hamiltonian"] = _matrix(o["hamiltonian"], "operators.hamiltonian")
        kw["observable"] = _matrix(o["observable"], "operators.observable")
        if kw["hamiltonian"].dim != kw["observable"].dim:
            raise ConfigError("hamiltonian and observable dimensions differ", "operators")
    if "output" in top:
        o = _take(top["output"], "output", {"format": str, "path": (str, type(None))})
        if o.get("format", "csv") not in ("csv", "json"):
            raise ConfigError("must be 'csv' or 'json'", "output.format")
        if "path" in o and o["path"] is not None and not isinstance(o["path"], str):
            raise ConfigError("expected a string or null", "output.path")
        kw["output"] = OutputSettings(**o)

    cfg = RunConfig(**kw)
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    if cfg.mode == "sweep":
        g = cfg.time_grid
        if g.num_points < 2:
            raise ConfigError("must be >= 2 for sweep", "time_grid.num_points")
        if not g.t_end > g.t_start:
            raise ConfigError("t_end must exceed t_start", "time_grid")
    if cfg.mode == "fuzz":
        f = cfg.fuzz
        if f.trials < 1:
            raise ConfigError("must be >= 1", "fuzz.trials")
        if f.dim_min < 2:
            raise ConfigError("must be >= 2", "fuzz.dim_min")
        if f.dim_max < f.dim_min:
            raise ConfigError("must be >= dim_min", "fuzz.dim_max")
    if cfg.mode == "saturate":
        s = cfg.saturate
        if s.restarts < 1:
            raise ConfigError("must be >= 1", "saturate.restarts")
        if s.max_iterations < 1:
            raise ConfigError("must be >= 1", "saturate.max_iterations")
    if cfg.scenario == "generic" and cfg.mode != "fuzz" and cfg.hamiltonian is None:
        raise ConfigError("generic scenario requires operators.hamiltonian/observable",
                          "operators")
    if cfg.scenario != "generic" and cfg.hamiltonian is not None:
        raise ConfigError("operators are only used by the generic scenario", "operators")
    if cfg.state.amplitudes is not None and cfg.mode != "fuzz":
        dim = cfg.hamiltonian.dim if cfg.scenario == "generic" else 2
        if len(cfg.state.amplitudes) != dim:
            raise ConfigError(f"expected {dim} amplitudes", "state.amplitudes")
    if (cfg.state.named is not None and cfg.hamiltonian is not None
            and cfg.hamiltonian.dim != 2):
        raise ConfigError("named states are two-dimensional", "state.named")


def load_config(path: str) -> RunConfig:
    """Read a JSON config file. Syntax errors report line and column."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    return parse_config(data)
