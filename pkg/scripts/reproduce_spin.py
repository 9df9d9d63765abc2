"""Print the spin-1/2 golden values next to the generic pipeline.

    python scripts/reproduce_spin.py [--hbar 1.0] [--gamma 1.0] [--tau 1.0]
"""

import argparse

import numpy as np

from dynbound import (
    Constant,
    ExplicitTimeScenario,
    PhysicalConstants,
    SpinHalfScenario,
    double_commutator,
    heisenberg_derivative,
    named_state,
    reduction_check,
    static_closed_forms,
    timedep_closed_forms,
)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--hbar", type=float, default=1.0)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--field", type=float, default=1.0)
    p.add_argument("--tau", type=float, default=1.0)
    args = p.parse_args()

    consts = PhysicalConstants(hbar=args.hbar, gamma=args.gamma, tau=args.tau)
    static = SpinHalfScenario(consts, Constant(args.field))
    explicit = ExplicitTimeScenario(static, args.tau)
    sx, sy, sz = static.ops
    h = static.hamiltonian().at(0.0)
    gb = args.gamma * args.field

    print("dSx/dt - gamma B Sy      :", np.max(np.abs(
        heisenberg_derivative(h, sx, args.hbar).matrix - gb * sy.matrix)))
    print("[Sx,[H,Sx]] - g hbar^2 B Sz:", np.max(np.abs(
        double_commutator(h, sx).matrix - gb * args.hbar ** 2 * sz.matrix)))

    print("\nstatic observable A = Sx")
    print(f"{'state':>6} {'lhs':>12} {'rhs':>12} {'closed lhs':>12} {'closed rhs':>12}")
    for name in ("+z", "-z", "+x", "+y"):
        psi = named_state(name)
        r = static.evaluate(0.0, psi)
        lhs, rhs = static_closed_forms(static, 0.0, psi)
        print(f"{name:>6} {r.lhs:12.6f} {r.rhs_comm:12.6f} {lhs:12.6f} {rhs:12.6f}")

    print("\nexplicit-time observable A = Sx + (t/tau) Sy, state |+z>")
    print(f"{'t':>6} {'lhs':>12} {'rhs':>12} {'closed rhs':>12} {'bracket':>10}")
    psi = named_state("+z")
    for t in np.linspace(0.0, 2.0, 5):
        r = explicit.evaluate(t, psi)
        rhs, b = timedep_closed_forms(explicit, t, psi)
        print(f"{t:6.2f} {r.lhs:12.6f} {r.rhs_comm:12.6f} {rhs:12.6f} {b:10.4f}")

    red = reduction_check(explicit, 0.0, psi)
    print("\nreduction at t = 0:", red)


if __name__ == "__main__":
    main()
