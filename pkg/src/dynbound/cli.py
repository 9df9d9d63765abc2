"""Command-line entry point.

    dynbound check    --config run.json
    dynbound sweep    --config run.json [--out trace.csv]
    dynbound fuzz     --config run.json [--workers N]
    dynbound saturate --config run.json

Exit codes: 0 ok, 1 inequality violated (fuzz/check) or target slack unmet
(saturate), 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from .bounds import chain_diagnostics
from .errors import ConfigError, NoNonDegenerateCandidate, WaveformDomainError
from .harness.config import load_config
from .harness.emit import emit
from .harness.runs import run_check, run_fuzz, run_sweep, saturation_search

EXIT_OK, EXIT_VIOLATION, EXIT_CONFIG, EXIT_IO = 0, 1, 2, 3

log = logging.getLogger("dynbound")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dynbound",
        description="Evaluate the uncertainty relation between an observable and its time derivative.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check", "sweep", "fuzz", "saturate"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON run configuration")
        p.add_argument("--out", help="output path (default: config output.path or stdout)")
        p.add_argument("--seed", type=int, help="override every seed in the config")
        p.add_argument("--hbar", type=float, help="override constants.hbar")
        if name == "fuzz":
            p.add_argument("--workers", type=int, default=1)
    return parser


def _run(args) -> int:
    cfg = load_config(args.config)
    if cfg.mode != args.command:
        cfg = replace(cfg, mode=args.command)
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    if args.hbar is not None:
        cfg = cfg.with_hbar(args.hbar)
    out = args.out or cfg.output.path
    fmt = cfg.output.format

    if args.command == "check":
        report = run_check(cfg)
        if fmt == "json":
            emit(_CheckResult(report), "json", out)
        else:
            emit(report, "csv", out)
        for link in chain_diagnostics(report):
            log.info("%s: %.17g vs %.17g holds=%s", link.name, link.lhs, link.rhs, link.holds)
        return EXIT_VIOLATION if report.violates else EXIT_OK

    if args.command == "sweep":
        trace = run_sweep(cfg)
        emit(trace, fmt, out)
        bad = any(r.slack < -1e-9 * max(1.0, r.lhs) for r in trace.rows)
        return EXIT_VIOLATION if bad else EXIT_OK

    if args.command == "fuzz":
        report = run_fuzz(cfg, workers=args.workers)
        emit(report, "json", out)
        log.info("%d trials, %d violations, min slack %.3e",
                 report.trials, len(report.violations), report.min_slack_seen)
        return EXIT_VIOLATION if report.violations else EXIT_OK

    result = saturation_search(cfg)
    emit(result, "json", out)
    return EXIT_OK if result.report.slack <= cfg.saturate.target_slack else EXIT_VIOLATION


class _CheckResult:
    def __init__(self, report):
        self.report = report

    def as_dict(self):
        d = self.report.as_dict()
        d["chain"] = [
            {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds, "margin": c.margin}
            for c in chain_diagnostics(self.report)
        ]
        return d


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except (WaveformDomainError, NoNonDegenerateCandidate) as exc:
        log.error("%s", exc)
        return EXIT_CONFIG if isinstance(exc, WaveformDomainError) else EXIT_VIOLATION
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
