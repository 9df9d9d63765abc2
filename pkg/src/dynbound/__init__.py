"""Uncertainty relation between a quantum observable and its time derivative."""

from .bounds import (
    UncertaintyReport,
    chain_diagnostics,
    combined_bound_expectation,
    evaluate_static,
    evaluate_timedep,
)
from .dynamics import (
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
from .operators import (
    HermitianOperator,
    PureState,
    anticommutator,
    commutator,
    complex_expectation,
    expectation,
    fluctuation,
    sym_antisym_split,
    variance,
)
from .spin import (
    ExplicitTimeScenario,
    SpinHalfScenario,
    named_state,
    reduction_check,
    spin_operators,
    static_closed_forms,
    timedep_closed_forms,
)

__version__ = "0.1.0"
