"""Finite-difference check of d<A>/dt against <dA/dt> along RK4 trajectories.

H(t) = -sin(t) Sz, psi(0) = |+x>, A(t) = Sx + t Sy. Prints the error and the
observed order as the difference step halves.
"""

import math

from dynbound import (
    Constant,
    HamiltonianSchedule,
    HermitianOperator,
    OperatorSchedule,
    Ramp,
    Sinusoid,
    expectation,
    named_state,
    propagate_state,
    spin_operators,
    total_derivative,
)


def main(t=1.0, dt=1e-4):
    sx, sy, sz = spin_operators(1.0)
    h = HamiltonianSchedule(((Sinusoid(1.0, 1.0), HermitianOperator(-sz.matrix)),))
    a = OperatorSchedule(((Constant(1.0), sx), (Ramp(1.0), sy)))
    psi0 = named_state("+x")
    prev = None
    for step in (4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4):
        pm = propagate_state(h, psi0, 0.0, t - step, dt)
        p0 = propagate_state(h, pm, t - step, t, dt)
        pp = propagate_state(h, p0, t, t + step, dt)
        fd = (expectation(a.at(t + step), pp) - expectation(a.at(t - step), pm)) / (2 * step)
        err = abs(fd - expectation(total_derivative(a, h, t), p0))
        order = "" if prev is None else f"  order {math.log2(prev / err):.3f}"
        print(f"h={step:.1e}  err={err:.3e}{order}")
        prev = err


if __name__ == "__main__":
    main()
