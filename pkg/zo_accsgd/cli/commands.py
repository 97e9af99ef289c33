"""Subcommand implementations. Each returns the process exit code."""

import csv
import itertools
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .. import __version__
from ..config import ordered_map
from ..errors import ConsistencyError, DivergenceError, ParseError, UsageError
from ..kernels import compute_constants, kernel_for_beta, legendre_kernel, load_kernel_file, validate_moments
from ..log_util import log, warn
from ..optimizers import AccSgdConfig, RunStatus, RunTrace, StopRule, TraceRecord, run_zo_acc_sgd, run_zo_sgd
from ..problems import KNOWN_DATASETS, load_libsvm, make_problem
from ..theory import error_floor_terms, plan
from .config import METHODS, ExperimentConfig

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DIVERGED = 2
EXIT_CHECK_FAILED = 3

TRACE_HEADER = ["iteration", "oracle_calls", "f_gap", "wall_ms", "seed"]
SWEEP_HEADER = ["method", "eta", "batch_size", "seed", "final_f_gap", "diverged", "best"]
INF_SENTINEL = "inf"


def _error(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _print_json(payload: Dict[str, Any]) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _fmt(value: float) -> str:
    return INF_SENTINEL if not math.isfinite(value) else repr(float(value))


class CsvTraceWriter:
    """Streams trace records of one run into a CSV file."""

    def __init__(self, path: str):
        self.path = path
        self._file = open(path, "w", encoding="utf-8", newline="")
        self._writer = csv.writer(self._file, lineterminator="\n")
        self._writer.writerow(TRACE_HEADER)

    def __call__(self, record: TraceRecord) -> None:
        self._writer.writerow(
            [record.iteration, record.oracle_calls, repr(record.f_gap), f"{record.wall_ms:.3f}", record.seed]
        )

    def close(self) -> None:
        self._file.close()


@dataclass
class RunOutcome:
    seed: int
    trace: Optional[RunTrace]
    diverged: bool
    csv_path: Optional[str] = None

    @property
    def final_gap(self) -> float:
        if self.diverged or self.trace is None:
            return math.inf
        return self.trace.final_gap


def execute(config: ExperimentConfig, seed: int, csv_path: Optional[str] = None, workers: Optional[int] = None) -> RunOutcome:
    """One (config, seed) run; divergence is reported, not raised."""
    objective = make_problem(config.problem)
    stop = StopRule(config.iterations, config.record_every, config.target_gap)
    writer = CsvTraceWriter(csv_path) if csv_path else None
    listeners = [writer] if writer else []
    try:
        if config.method == "zo_acc_sgd":
            trace = run_zo_acc_sgd(
                objective,
                config.noise_model(),
                config.estimator(),
                AccSgdConfig(L=config.L, eta=config.eta, rho_B=config.rho_B),
                stop,
                seed,
                workers=workers,
                listeners=listeners,
            )
        else:
            L = config.L if config.L is not None else objective.L
            step = config.eta if config.eta is not None else (1.0 / L if L else None)
            if step is None:
                raise UsageError("zo_sgd needs eta or a known smoothness constant L")
            trace = run_zo_sgd(objective, config.noise_model(), config.estimator(), step, stop, seed, workers=workers, listeners=listeners)
        return RunOutcome(seed, trace, False, csv_path)
    except DivergenceError as e:
        warn(f"{config.method} seed={seed} diverged: {e}")
        return RunOutcome(seed, e.trace, True, csv_path)
    finally:
        if writer:
            writer.close()


def _load_config(args: Any) -> ExperimentConfig:
    config = ExperimentConfig.load(args.config) if getattr(args, "config", None) else ExperimentConfig()
    config.validate()
    return config


def cmd_run(args: Any) -> int:
    try:
        config = _load_config(args).with_overrides(
            seeds=args.seeds,
            iterations=args.iterations,
            output_dir=args.output_dir,
            method=args.method,
            eta=args.eta,
            batch_size=args.batch_size,
        )
        os.makedirs(config.output_dir, exist_ok=True)

        def one(seed: int) -> RunOutcome:
            path = os.path.join(config.output_dir, f"trace_{config.method}_seed{seed}.csv")
            return execute(config, seed, path, workers=args.workers)

        outcomes = ordered_map(one, config.seeds, args.workers)
    except UsageError as e:
        _error(str(e))
        return EXIT_CONFIG

    summary = {
        "version": __version__,
        "config": config.to_dict(),
        "kappa_convention": "expectation",
        "runs": [
            {
                "seed": o.seed,
                "status": RunStatus.DIVERGED.value if o.diverged else o.trace.status.value,
                "final_f_gap": _fmt(o.final_gap),
                "csv": os.path.basename(o.csv_path),
                "metadata": o.trace.metadata if o.trace else {},
            }
            for o in outcomes
        ],
    }
    with open(os.path.join(config.output_dir, "run.json"), "w", encoding="utf-8") as f:
        json.dump(summary, f, indent=2, sort_keys=True, default=str)
    if any(o.diverged for o in outcomes):
        _error("at least one run diverged; see run.json")
        return EXIT_DIVERGED
    log(f"wrote {len(outcomes)} trace(s) to {config.output_dir}")
    return EXIT_OK


def load_grid(args: Any, config: ExperimentConfig) -> Tuple[List[str], List[float], List[int]]:
    """(methods, etas, batch sizes) from --grid JSON and/or --eta / --batch-size lists."""
    grid: Dict[str, Any] = {}
    if args.grid:
        try:
            with open(args.grid, "r", encoding="utf-8") as f:
                grid = json.load(f)
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot read grid {args.grid}: {e}") from e
    methods = list(grid.get("method", [config.method]))
    etas = [float(v) for v in (args.eta or grid.get("eta", []))]
    batches = [int(v) for v in (args.batch_size or grid.get("batch_size", [config.batch_size]))]
    if not methods or not etas or not batches:
        raise UsageError("empty grid: need at least one eta, batch size and method")
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise UsageError(f"unknown methods in grid: {bad}")
    return methods, etas, batches


def mark_best(rows: List[Dict[str, Any]]) -> None:
    """Flag the eta with the lowest mean final gap per (method, batch_size)."""
    groups: Dict[Tuple[str, int], Dict[float, List[float]]] = {}
    for row in rows:
        groups.setdefault((row["method"], row["batch_size"]), {}).setdefault(row["eta"], []).append(row["gap"])
    best: Dict[Tuple[str, int], Optional[float]] = {}
    for key, by_eta in groups.items():
        finite = {eta: sum(g) / len(g) for eta, g in by_eta.items() if all(math.isfinite(v) for v in g)}
        best[key] = min(finite, key=finite.get) if finite else None
    for row in rows:
        row["best"] = best[(row["method"], row["batch_size"])] == row["eta"]


def cmd_sweep(args: Any) -> int:
    try:
        config = _load_config(args).with_overrides(
            seeds=args.seeds, iterations=args.iterations, output_dir=args.output_dir
        )
        methods, etas, batches = load_grid(args, config)
        cells = [
            (config.with_overrides(method=m, eta=eta, batch_size=B), seed)
            for m, eta, B in itertools.product(methods, etas, batches)
            for seed in config.seeds
        ]
        outcomes = ordered_map(lambda cell: execute(cell[0], cell[1], workers=args.workers), cells, args.workers)
    except UsageError as e:
        _error(str(e))
        return EXIT_CONFIG

    rows = [
        {"method": cell.method, "eta": cell.eta, "batch_size": cell.batch_size, "seed": seed, "gap": o.final_gap, "diverged": o.diverged}
        for (cell, seed), o in zip(cells, outcomes)
    ]
    mark_best(rows)
    os.makedirs(config.output_dir, exist_ok=True)
    path = os.path.join(config.output_dir, "sweep_summary.csv")
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(SWEEP_HEADER)
        for row in rows:
            writer.writerow(
                [row["method"], repr(row["eta"]), row["batch_size"], row["seed"], _fmt(row["gap"]),
                 str(row["diverged"]).lower(), str(row["best"]).lower()]
            )
    log(f"wrote {len(rows)} sweep rows to {path}")
    return EXIT_OK


def cmd_plan(args: Any) -> int:
    try:
        spec = load_kernel_file(args.kernel_file) if args.kernel_file else kernel_for_beta(args.beta)
        constants = compute_constants(spec, args.beta, check_bounds=False).expectation
        result = plan(args.d, args.beta, args.L, args.R, args.eps, args.B, constants, args.delta_target)
    except UsageError as e:
        _error(str(e))
        return EXIT_CONFIG
    payload = result.to_dict()
    delta = args.delta_target if args.delta_target is not None else result.delta_max
    payload["error_floor"] = error_floor_terms(
        max(1, math.ceil(result.N)), args.d, args.L, args.R, result.h, delta, args.B, constants, args.L_beta
    )
    _print_json(payload)
    return EXIT_OK


def cmd_check_kernel(args: Any) -> int:
    try:
        if args.kernel_file:
            spec = load_kernel_file(args.kernel_file)
            beta = float(min(spec.beta_targets))
        else:
            spec = legendre_kernel(args.beta)
            beta = float(args.beta)
        moments = validate_moments(spec)
    except UsageError as e:
        _error(str(e))
        return EXIT_CONFIG

    payload: Dict[str, Any] = {"kernel": spec.to_dict(), "moments": moments.to_dict()}
    if not moments.passed:
        failure = moments.first_failure
        _print_json(payload)
        _error(f"moment j={failure.j} failed: E[r^{failure.j} K(r)] = {failure.value:.3e}, expected {failure.expected}")
        return EXIT_CHECK_FAILED
    try:
        report = compute_constants(spec, beta, check_bounds=True)
    except ConsistencyError as e:
        _print_json(payload)
        _error(str(e))
        return EXIT_CHECK_FAILED
    except UsageError as e:
        _error(str(e))
        return EXIT_CONFIG
    payload["constants"] = report.to_dict()
    _print_json(payload)
    return EXIT_OK


def cmd_parse_data(args: Any) -> int:
    try:
        _, _, meta = load_libsvm(args.path, n_features=args.n_features)
    except (ParseError, OSError) as e:
        _error(f"{args.path}: {e}")
        return EXIT_CONFIG
    payload: Dict[str, Any] = {"name": meta.name, "M": meta.M, "d": meta.d, "source": meta.source}
    stem = meta.name.split(".")[0].replace("_scale", "")
    if stem in KNOWN_DATASETS:
        payload["matches_known_shape"] = (meta.M, meta.d) == KNOWN_DATASETS[stem]
    _print_json(payload)
    return EXIT_OK
