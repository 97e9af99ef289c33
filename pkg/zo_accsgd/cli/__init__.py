"""Command-line experiment runner.

Usage:
    zo-accsgd run --config exp.json --seeds 1 2 3
    zo-accsgd sweep --config exp.json --eta 0.01 0.02 --batch-size 10 100
    zo-accsgd plan --d 64 --beta 3 --L 2 --R 1 --eps 1e-2 --B 4800
    zo-accsgd check-kernel --beta 3
    zo-accsgd parse-data phishing

Exit codes: 0 success, 1 configuration or usage error, 2 divergence,
3 failed kernel check.
"""

import argparse
import sys
from typing import List, Optional

from ..errors import ZoError
from .commands import (
    EXIT_CONFIG,
    cmd_check_kernel,
    cmd_parse_data,
    cmd_plan,
    cmd_run,
    cmd_sweep,
)
from .config import METHODS, ExperimentConfig


class _Parser(argparse.ArgumentParser):
    """argparse reports usage errors with exit code 1 here."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_CONFIG)


def _experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument('--config', '-c', help='Experiment JSON (defaults: planted linear system, d=64, B=50)')
    p.add_argument('--seeds', type=int, nargs='+', help='Seeds to run (overrides the config)')
    p.add_argument('--iterations', '-n', type=int, help='Iteration budget N')
    p.add_argument('--output-dir', '-o', help='Directory for traces and summaries')
    p.add_argument('--workers', type=int, default=None, help='Worker threads (default: ZO_THREADS, 0 = auto)')


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog='zo-accsgd', description='Zero-order accelerated SGD experiments')
    sub = p.add_subparsers(dest='command', required=True, parser_class=_Parser)

    run = sub.add_parser('run', help='Run one configuration for every seed and write trace CSVs')
    _experiment_flags(run)
    run.add_argument('--method', choices=METHODS, help='Optimizer (overrides the config)')
    run.add_argument('--eta', type=float, help='Step size (overrides the config)')
    run.add_argument('--batch-size', '-B', type=int, help='Batch size (overrides the config)')
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser('sweep', help='Grid-search step size and batch size')
    _experiment_flags(sweep)
    sweep.add_argument('--grid', help='Grid JSON: {"eta": [...], "batch_size": [...], "method": [...]}')
    sweep.add_argument('--eta', type=float, nargs='+', help='Step sizes to try')
    sweep.add_argument('--batch-size', '-B', type=int, nargs='+', help='Batch sizes to try')
    sweep.set_defaults(func=cmd_sweep)

    plan = sub.add_parser('plan', help='Iteration and noise budgets for one setting, as JSON')
    plan.add_argument('--d', type=int, required=True, help='Dimension')
    plan.add_argument('--beta', type=float, required=True, help='Smoothness order (> 2)')
    plan.add_argument('--L', type=float, required=True, help='Smoothness constant')
    plan.add_argument('--R', type=float, required=True, help='Initial distance to the solution')
    plan.add_argument('--eps', type=float, required=True, help='Target accuracy in (0, 1)')
    plan.add_argument('--B', type=int, required=True, help='Batch size')
    plan.add_argument('--delta-target', type=float, default=None, help='Noise level to tolerate')
    plan.add_argument('--L-beta', type=float, default=1.0, help='Holder constant for the error-floor terms (default: 1)')
    plan.add_argument('--kernel-file', default=None, help='Custom kernel JSON instead of the shipped one')
    plan.set_defaults(func=cmd_plan)

    check = sub.add_parser('check-kernel', help='Verify kernel moments and constant bounds')
    source = check.add_mutually_exclusive_group(required=True)
    source.add_argument('--beta', type=int, help='Shipped kernel order: 3, 4, 5 or 6')
    source.add_argument('--kernel-file', help='Custom kernel JSON')
    check.set_defaults(func=cmd_check_kernel)

    data = sub.add_parser('parse-data', help='Validate a LIBSVM file and print its shape')
    data.add_argument('path', help='LIBSVM text file')
    data.add_argument('--n-features', type=int, default=None, help='Pad the feature count')
    data.set_defaults(func=cmd_parse_data)
    return p


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    return build_parser().parse_args(argv)


def main(argv: Optional[List[str]] = None) -> int:
    args = parse_args(argv)
    try:
        return args.func(args)
    except ZoError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


__all__ = ["ExperimentConfig", "build_parser", "main", "parse_args"]
