"""Configuration, random sampling, sweeps, fuzzing, saturation search and output."""

from .config import RunConfig, load_config, parse_config
from .emit import emit, read_trace_csv
from .runs import (
    FuzzReport,
    TimeTrace,
    TraceRow,
    find_min_slack,
    run_check,
    run_fuzz,
    run_sweep,
)
from .sampling import child_seed, mix64, sample_haar_state, sample_hermitian

__all__ = [
    "RunConfig", "load_config", "parse_config", "emit", "read_trace_csv",
    "FuzzReport", "TimeTrace", "TraceRow", "find_min_slack", "run_check",
    "run_fuzz", "run_sweep", "child_seed", "mix64", "sample_haar_state",
    "sample_hermitian",
]
