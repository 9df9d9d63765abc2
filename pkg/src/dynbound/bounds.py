"""Evaluate the observable/derivative uncertainty relation and its derivation chain.

For an observable ``A`` and its time derivative ``dA/dt``::

    dA * d(dA/dt) >= |<dA d(dA/dt)>|            (Cauchy-Schwarz)
                  >= |<[A, dA/dt]>| / 2         (drop the anticommutator)

and with ``dA/dt = dA/dt|explicit + (i/hbar)[H, A]`` the right-hand side can
be rewritten via the double commutator ``[A, [H, A]]``. Both forms of the
right-hand side are computed along independent paths so they cross-check
each other.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from .dynamics import OperatorSchedule, double_commutator, heisenberg_derivative
from .errors import DimensionError
from .operators import (
    HermitianOperator,
    PureState,
    commutator,
    complex_expectation,
    fluctuation,
    sym_antisym_split,
    uncertainty,
)

DEGENERATE_LHS = 1e-12
CHAIN_RTOL = 1e-9
TWO_PATH_RTOL = 1e-10


@dataclass(frozen=True)
class UncertaintyReport:
    t: float
    delta_A: float
    delta_dAdt: float
    lhs: float
    rhs_cs: float
    rhs_comm: float
    rhs_double: float
    sym_part: float
    antisym_part: float
    slack: float
    saturation_ratio: float | None
    degenerate: bool

    def as_dict(self) -> dict:
        return asdict(self)

    @property
    def violates(self) -> bool:
        return self.slack < -CHAIN_RTOL * max(1.0, self.lhs)


def _report(t, a, dadt, psi, rhs_double) -> UncertaintyReport:
    delta_a = uncertainty(a, psi)
    delta_d = uncertainty(dadt, psi)
    lhs = delta_a * delta_d
    da = fluctuation(a, psi)
    dd = fluctuation(dadt, psi)
    rhs_cs = abs(complex_expectation(da.matrix @ dd.matrix, psi))
    sym, anti = sym_antisym_split(da, dd, psi)
    rhs_comm = 0.5 * abs(complex_expectation(commutator(a, dadt), psi))
    degenerate = lhs < DEGENERATE_LHS
    return UncertaintyReport(
        t=float(t),
        delta_A=delta_a,
        delta_dAdt=delta_d,
        lhs=lhs,
        rhs_cs=rhs_cs,
        rhs_comm=rhs_comm,
        rhs_double=float(rhs_double),
        sym_part=sym,
        antisym_part=anti,
        slack=lhs - rhs_comm,
        saturation_ratio=None if degenerate else rhs_comm / lhs,
        degenerate=degenerate,
    )


def evaluate_static(
    h: HermitianOperator,
    a: HermitianOperator,
    psi: PureState,
    hbar: float = 1.0,
    t: float = 0.0,
) -> UncertaintyReport:
    """Report for an observable with no explicit time dependence.

    ``rhs_double`` is ``|<i [A, [H, A]]>| / (2 hbar)``, computed without going
    through ``dA/dt``.
    """
    if not (h.dim == a.dim == psi.dim):
        raise DimensionError(f"dimension mismatch: H {h.dim}, A {a.dim}, psi {psi.dim}")
    dadt = heisenberg_derivative(h, a, hbar)
    dc = double_commutator(h, a)
    rhs_double = abs(complex_expectation(1j * dc.matrix, psi)) / (2.0 * hbar)
    return _report(t, a, dadt, psi, rhs_double)


def combined_bound_expectation(
    a: OperatorSchedule, h: OperatorSchedule, t: float, psi: PureState, hbar: float = 1.0
) -> complex:
    """``<[A, dA/dt|explicit]> + (i/hbar) <[A, [H, A]]>``; purely imaginary in exact arithmetic."""
    at = a.at(t)
    explicit = complex_expectation(commutator(at, a.partial_matrix_at(t)), psi)
    dc = complex_expectation(double_commutator(h.at(t), at), psi)
    return explicit + (1j / hbar) * dc


def evaluate_timedep(
    a: OperatorSchedule,
    h: OperatorSchedule,
    t: float,
    psi: PureState,
    hbar: float = 1.0,
) -> UncertaintyReport:
    """Report for ``A(t)`` with explicit time dependence, at time ``t``."""
    if not (a.dim == h.dim == psi.dim):
        raise DimensionError(f"dimension mismatch: A {a.dim}, H {h.dim}, psi {psi.dim}")
    at = a.at(t)
    heis = heisenberg_derivative(h.at(t), at, hbar)
    dadt = heis if a.is_static else HermitianOperator(a.partial_matrix_at(t) + heis.matrix)
    rhs_double = 0.5 * abs(combined_bound_expectation(a, h, t, psi, hbar))
    return _report(t, at, dadt, psi, rhs_double)


class ChainLink(NamedTuple):
    name: str
    lhs: float
    rhs: float
    holds: bool

    @property
    def margin(self) -> float:
        return self.lhs - self.rhs


def chain_diagnostics(report: UncertaintyReport) -> list[ChainLink]:
    """The three links of the derivation, each with its numerical margin."""
    r = report
    cs = r.lhs >= r.rhs_cs - CHAIN_RTOL * max(1.0, r.lhs)
    drop = r.rhs_cs >= r.rhs_comm - CHAIN_RTOL * max(1.0, r.rhs_cs)
    same = abs(r.rhs_comm - r.rhs_double) <= TWO_PATH_RTOL * max(1.0, r.rhs_comm)
    return [
        ChainLink("cauchy_schwarz", r.lhs, r.rhs_cs, cs),
        ChainLink("drop_anticommutator", r.rhs_cs, r.rhs_comm, drop),
        ChainLink("double_commutator_identity", r.rhs_comm, r.rhs_double, same),
    ]


def all_links_hold(report: UncertaintyReport) -> bool:
    return all(link.holds for link in chain_diagnostics(report))


def report_fields_close(r1: UncertaintyReport, r2: UncertaintyReport, rtol: float) -> bool:
    """Field-by-field comparison with tolerance ``rtol * max(1, |x|)``."""
    for name in ("delta_A", "delta_dAdt", "lhs", "rhs_cs", "rhs_comm", "rhs_double",
                 "sym_part", "antisym_part", "slack"):
        x, y = getattr(r1, name), getattr(r2, name)
        if abs(x - y) > rtol * max(1.0, abs(x)):
            return False
    return bool(np.isclose(r1.t, r2.t))
