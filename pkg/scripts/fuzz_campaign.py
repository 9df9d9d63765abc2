"""Run the full randomized campaign and summarize it.

    python scripts/fuzz_campaign.py [--trials 10000] [--spin-trials 2000] [--workers 4] [--seed 0]
"""

import argparse

from dynbound.harness import parse_config, run_fuzz


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--spin-trials", type=int, default=2_000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    runs = [("generic", args.trials, 8), ("static_spin", args.spin_trials, 2),
            ("explicit_time_spin", args.spin_trials, 2)]
    for scenario, trials, dim_max in runs:
        cfg = parse_config({"mode": "fuzz", "scenario": scenario,
                            "fuzz": {"trials": trials, "dim_max": dim_max, "seed": args.seed}})
        r = run_fuzz(cfg, workers=args.workers)
        print(f"{scenario:>20}: {r.trials} trials, {len(r.violations)} violations, "
              f"{len(r.chain_failures)} chain failures, min slack {r.min_slack_seen:.3e} "
              f"(lhs {r.min_slack_lhs:.3e}), {r.wall_time:.1f}s")


if __name__ == "__main__":
    main()
