"""Experiment harness for the bat-swarm optimizers.

Subcommands:
    run       seeded BA/MBA batches over registered objectives
    assign    caller-to-agent assignment search from a cost-matrix CSV
    list      show the objective registry
    wilcoxon  rank-sum p-value for a two-column CSV of samples

Every emitted file depends only on the flags and the base seed, never on
wall-clock time, so repeated invocations are byte-identical.  Timing is
reported on stdout only.  Run N of a batch uses seed = base_seed + N
(N starting at 0); the derivation is restated in each file's header line.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional

from . import benchmarks
from .analysis import (
    significance_label,
    summarize,
    wilcoxon_rank_sum,
    write_comparison_csv,
    xpl_xpt,
)
from .assignment import (
    Assignment,
    CostMatrix,
    brute_force,
    keys_objective,
    optimize_assignment,
)
from .core import ACCEPTANCE_MODES, AlgoParams
from .optimizers import ALGORITHMS, RunConfig, run, write_history_csv

__all__ = ["ExperimentConfig", "main", "entrypoint"]

OUT_DIR_ENV = "BATOPT_OUT"
DEFAULT_OUT = "batopt-out"
EMIT_CHOICES = ("summary", "history", "diversity", "pvalues")


class UsageError(Exception):
    """Configuration problem: exit code 2."""


@dataclass
class ExperimentConfig:
    """A validated `run` invocation."""

    algorithms: tuple
    objectives: tuple          # (display_name, ObjectiveSpec) pairs
    population: int = 30
    iterations: int = 500
    runs: int = 30
    seed: int = 1
    acceptance_mode: str = "best"
    out_dir: str = DEFAULT_OUT
    emit: tuple = ("summary",)
    plots: bool = True

    def __post_init__(self):
        if not self.algorithms:
            raise UsageError("at least one algorithm is required")
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise UsageError(f"unknown algorithm {algo!r}")
        if not self.objectives:
            raise UsageError("at least one objective is required")
        if self.runs < 1:
            raise UsageError("--runs must be at least 1")
        if self.population < 2:
            raise UsageError("--pop must be at least 2")
        if self.iterations < 1:
            raise UsageError("--iters must be at least 1")
        if self.acceptance_mode not in ACCEPTANCE_MODES:
            raise UsageError(f"--acceptance must be one of {ACCEPTANCE_MODES}")
        for item in self.emit:
            if item not in EMIT_CHOICES:
                raise UsageError(f"unknown emit target {item!r}")

    def params(self) -> AlgoParams:
        return AlgoParams(acceptance_mode=self.acceptance_mode)

    def seed_for(self, index: int) -> int:
        return self.seed + index


def _split_csv_flag(text: str) -> list:
    return [part.strip() for part in text.split(",") if part.strip()]


def _resolve_objectives(specs, default_dim):
    """Parse NAME or NAME:DIM entries against the registry."""
    resolved = []
    for raw in specs:
        name, _, dim_text = raw.partition(":")
        if dim_text:
            try:
                dim = int(dim_text)
            except ValueError:
                raise UsageError(f"bad dimension in {raw!r}") from None
        else:
            dim = default_dim
        try:
            spec = benchmarks.lookup(name, dim)
        except KeyError:
            raise UsageError(f"unknown objective {name!r}") from None
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        resolved.append((spec.name, spec))
    return tuple(resolved)


def _default_out_dir() -> str:
    return os.environ.get(OUT_DIR_ENV, DEFAULT_OUT)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="batopt",
        description="Bat-swarm optimization experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="seeded benchmark batches")
    p_run.add_argument("--algo", default="BA,MBA",
                       help="comma list from {BA, MBA} (default both)")
    p_run.add_argument("--fn", required=True,
                       help="comma list of objectives, NAME or NAME:DIM")
    p_run.add_argument("--dim", type=int, default=None,
                       help="dimension for scalable objectives without :DIM")
    p_run.add_argument("--pop", type=int, default=30)
    p_run.add_argument("--iters", type=int, default=500)
    p_run.add_argument("--runs", type=int, default=30)
    p_run.add_argument("--seed", type=int, default=1, help="base seed")
    p_run.add_argument("--acceptance", default="best", choices=ACCEPTANCE_MODES)
    p_run.add_argument("--emit", default="summary",
                       help=f"comma list from {EMIT_CHOICES}")
    p_run.add_argument("--out", default=None,
                       help=f"output directory (default ${OUT_DIR_ENV} or ./{DEFAULT_OUT})")
    plots = p_run.add_mutually_exclusive_group()
    plots.add_argument("--plots", dest="plots", action="store_true", default=True)
    plots.add_argument("--no-plots", dest="plots", action="store_false")

    p_assign = sub.add_parser("assign", help="assignment search on a cost matrix")
    p_assign.add_argument("matrix", help="cost-matrix CSV path")
    p_assign.add_argument("--algo", default="MBA", choices=ALGORITHMS)
    p_assign.add_argument("--pop", type=int, default=30)
    p_assign.add_argument("--iters", type=int, default=1000)
    p_assign.add_argument("--runs", type=int, default=1)
    p_assign.add_argument("--seed", type=int, default=1, help="base seed")
    p_assign.add_argument("--acceptance", default="best", choices=ACCEPTANCE_MODES)
    p_assign.add_argument("--out", default=None)
    plots = p_assign.add_mutually_exclusive_group()
    plots.add_argument("--plots", dest="plots", action="store_true", default=True)
    plots.add_argument("--no-plots", dest="plots", action="store_false")

    p_list = sub.add_parser("list", help="show registered objectives")
    p_list.add_argument("--json", action="store_true")

    p_wx = sub.add_parser("wilcoxon", help="rank-sum p-value for a CSV")
    p_wx.add_argument("samples", help="two-column CSV, one sample per column")
    p_wx.add_argument("--method", default="auto",
                      choices=("auto", "exact", "approx"))
    return parser


# ---------------------------------------------------------------------------
# run


def _pair_note(config: ExperimentConfig) -> str:
    algos = ",".join(config.algorithms)
    return (f"algos={algos} pop={config.population} iters={config.iterations} "
            f"runs={config.runs} base_seed={config.seed} "
            f"acceptance={config.acceptance_mode}; run N uses seed base+N")


def cmd_run(config: ExperimentConfig) -> int:
    os.makedirs(config.out_dir, exist_ok=True)
    want_div = "diversity" in config.emit
    note = _pair_note(config)

    started = time.perf_counter()
    results = {}
    for display, spec in config.objectives:
        for algo in config.algorithms:
            batch = []
            for index in range(config.runs):
                cfg = RunConfig(
                    algorithm=algo,
                    objective=display,
                    dimension=spec.dimension,
                    population=config.population,
                    iterations=config.iterations,
                    seed=config.seed_for(index),
                    params=config.params(),
                    record_diversity=want_div,
                )
                batch.append(run(cfg, objective=spec))
            results[(display, algo)] = batch
    elapsed = time.perf_counter() - started

    summary_rows = []
    pvalue_rows = []
    for display, spec in config.objectives:
        ba = results.get((display, "BA"))
        mba = results.get((display, "MBA"))
        ba_stats = summarize([r.best_fitness for r in ba]) if ba and config.runs > 1 else None
        mba_stats = summarize([r.best_fitness for r in mba]) if mba and config.runs > 1 else None
        p_value = None
        if ba and mba and config.runs >= 3:
            p_value = wilcoxon_rank_sum([r.best_fitness for r in ba],
                                        [r.best_fitness for r in mba])
        label = None
        if ba_stats and mba_stats:
            label = significance_label(mba_stats.mean, ba_stats.mean)
        summary_rows.append((
            display,
            ba_stats.mean if ba_stats else (ba[0].best_fitness if ba else None),
            ba_stats.std if ba_stats else None,
            mba_stats.mean if mba_stats else (mba[0].best_fitness if mba else None),
            mba_stats.std if mba_stats else None,
            p_value,
            label,
        ))
        if p_value is not None:
            pvalue_rows.append((display, p_value))

    if "summary" in config.emit:
        write_comparison_csv(summary_rows,
                             os.path.join(config.out_dir, "summary.csv"),
                             header_note=note)
        _write_summary_json(summary_rows, config)
    if "history" in config.emit:
        for (display, algo), batch in results.items():
            for index, result in enumerate(batch):
                name = f"history_{display}_{algo}_s{config.seed_for(index)}.csv"
                write_history_csv(result, os.path.join(config.out_dir, name),
                                  header_note=note)
    if want_div:
        _write_diversity_csv(results, config, note)
    if "pvalues" in config.emit:
        _write_pvalues_csv(pvalue_rows, config, note)
    if config.plots:
        _render_run_figures(results, config)

    _print_summary_table(summary_rows, config, elapsed)
    return 0


def _write_summary_json(rows, config: ExperimentConfig) -> None:
    payload = {
        "config": {
            "algorithms": list(config.algorithms),
            "objectives": [name for name, _ in config.objectives],
            "population": config.population,
            "iterations": config.iterations,
            "runs": config.runs,
            "base_seed": config.seed,
            "acceptance_mode": config.acceptance_mode,
            "seed_rule": "run N uses seed base+N",
        },
        "rows": [
            {
                "function": r[0],
                "ba_mean": r[1], "ba_std": r[2],
                "mba_mean": r[3], "mba_std": r[4],
                "p_value": r[5], "label": r[6],
            }
            for r in rows
        ],
    }
    path = os.path.join(config.out_dir, "summary.json")
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_diversity_csv(results, config: ExperimentConfig, note: str) -> None:
    path = os.path.join(config.out_dir, "diversity.csv")
    with open(path, "w", newline="") as fh:
        fh.write(f"# {note}; final-iteration percentages averaged over runs\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["function", "algorithm", "xpl_pct", "xpt_pct"])
        for display, _ in config.objectives:
            for algo in config.algorithms:
                batch = results.get((display, algo))
                if not batch:
                    continue
                finals_xpl = []
                finals_xpt = []
                for result in batch:
                    series = xpl_xpt(result.diversity_history)
                    finals_xpl.append(series.xpl_percent[-1])
                    finals_xpt.append(series.xpt_percent[-1])
                writer.writerow([
                    display,
                    algo,
                    repr(sum(finals_xpl) / len(finals_xpl)),
                    repr(sum(finals_xpt) / len(finals_xpt)),
                ])


def _write_pvalues_csv(rows, config: ExperimentConfig, note: str) -> None:
    path = os.path.join(config.out_dir, "pvalues.csv")
    with open(path, "w", newline="") as fh:
        fh.write(f"# {note}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["function", "p_value"])
        for display, p_value in rows:
            writer.writerow([display, repr(float(p_value))])


def _render_run_figures(results, config: ExperimentConfig) -> None:
    from . import figures

    for display, _ in config.objectives:
        histories = {
            algo: [r.history for r in results[(display, algo)]]
            for algo in config.algorithms
            if (display, algo) in results
        }
        figures.convergence_figure(
            histories, display,
            os.path.join(config.out_dir, f"convergence_{display}.png"))
        if "diversity" in config.emit:
            series = {
                algo: xpl_xpt(results[(display, algo)][0].diversity_history)
                for algo in config.algorithms
                if (display, algo) in results
            }
            figures.diversity_figure(
                series, display,
                os.path.join(config.out_dir, f"diversity_{display}.png"))


def _fmt(value) -> str:
    if value is None:
        return "-"
    return f"{value:.4e}"


def _print_summary_table(rows, config: ExperimentConfig, elapsed: float) -> None:
    print(f"{'function':<14}{'ba_mean':>13}{'ba_std':>13}"
          f"{'mba_mean':>13}{'mba_std':>13}{'p':>11}  label")
    for row in rows:
        display, ba_mean, ba_std, mba_mean, mba_std, p_value, label = row
        print(f"{display:<14}{_fmt(ba_mean):>13}{_fmt(ba_std):>13}"
              f"{_fmt(mba_mean):>13}{_fmt(mba_std):>13}"
              f"{_fmt(p_value):>11}  {label or '-'}")
    total = len(rows) * len(config.algorithms) * config.runs
    print(f"# {total} runs in {elapsed:.2f} s -> {config.out_dir}")


# ---------------------------------------------------------------------------
# assign


def cmd_assign(args) -> int:
    try:
        matrix = CostMatrix.from_csv(args.matrix)
    except FileNotFoundError:
        raise UsageError(f"matrix file not found: {args.matrix}") from None
    except ValueError as exc:
        raise UsageError(f"bad cost matrix: {exc}") from None

    out_dir = args.out if args.out is not None else _default_out_dir()
    os.makedirs(out_dir, exist_ok=True)
    params = AlgoParams(acceptance_mode=args.acceptance)
    if args.runs < 1:
        raise UsageError("--runs must be at least 1")

    oracle: Optional[Assignment] = None
    if matrix.n <= 10:
        oracle = brute_force(matrix)

    objective = keys_objective(matrix)
    note = (f"algo={args.algo} pop={args.pop} iters={args.iters} "
            f"runs={args.runs} base_seed={args.seed} "
            f"acceptance={args.acceptance}; run N uses seed base+N")

    started = time.perf_counter()
    best_assignment = None
    histories = []
    hits = 0
    for index in range(args.runs):
        seed = args.seed + index
        cfg = RunConfig(
            algorithm=args.algo,
            objective=objective.name,
            dimension=matrix.n,
            population=args.pop,
            iterations=args.iters,
            seed=seed,
            params=params,
        )
        found, result = optimize_assignment(matrix, cfg)
        histories.append((f"{args.algo} seed {seed}", result.history))
        write_history_csv(
            result,
            os.path.join(out_dir, f"history_assign_{args.algo}_s{seed}.csv"),
            header_note=note)
        if best_assignment is None or found.total_seconds < best_assignment.total_seconds:
            best_assignment = found
        if oracle is not None and found.total_seconds == oracle.total_seconds:
            hits += 1
    elapsed = time.perf_counter() - started

    best_assignment.to_csv(matrix, os.path.join(out_dir, "assignment.csv"))
    if args.plots:
        from . import figures

        figures.assignment_figure(
            histories,
            oracle.total_seconds if oracle else None,
            os.path.join(out_dir, "assignment.png"),
            title=f"{args.algo} assignment search (n={matrix.n})")

    for caller, agent in enumerate(best_assignment.perm):
        print(f"{matrix.caller_labels[caller]} -> {matrix.agent_labels[agent]} "
              f"({matrix.values[caller, agent]:g} s)")
    print(f"achieved total: {best_assignment.total_seconds:g} s")
    if oracle is not None:
        gap = best_assignment.total_seconds - oracle.total_seconds
        print(f"exhaustive optimum: {oracle.total_seconds:g} s (gap {gap:g})")
        print(f"optimum reached in {hits}/{args.runs} runs")
    print(f"# {args.runs} runs in {elapsed:.2f} s -> {out_dir}")
    return 0


# ---------------------------------------------------------------------------
# list / wilcoxon


def cmd_list(as_json: bool) -> int:
    rows = benchmarks.registry_rows()
    if as_json:
        payload = [
            {"name": name, "dimensions": rule, "bounds": bounds,
             "known_min": known_min}
            for name, rule, bounds, known_min in rows
        ]
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0
    print(f"{'name':<6}{'dimensions':<14}{'bounds':<22}known_min")
    for name, rule, bounds, known_min in rows:
        shown = "-" if known_min is None else f"{known_min:.12g}"
        print(f"{name:<6}{rule:<14}{bounds:<22}{shown}")
    return 0


def _read_two_columns(path) -> tuple:
    a, b = [], []
    try:
        with open(path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), start=1):
                if not row or not any(cell.strip() for cell in row):
                    continue
                if len(row) < 2:
                    raise UsageError(f"{path}:{lineno}: expected two columns")
                first, second = row[0].strip(), row[1].strip()
                if lineno == 1:
                    try:
                        float(first)
                    except ValueError:
                        continue        # header row
                if first:
                    a.append(_parse_sample(first, path, lineno))
                if second:
                    b.append(_parse_sample(second, path, lineno))
    except FileNotFoundError:
        raise UsageError(f"samples file not found: {path}") from None
    return a, b


def _parse_sample(text, path, lineno) -> float:
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"{path}:{lineno}: not a number: {text!r}") from None


def cmd_wilcoxon(args) -> int:
    a, b = _read_two_columns(args.samples)
    try:
        p_value = wilcoxon_rank_sum(a, b, method=args.method)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(repr(p_value))
    return 0


# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            config = ExperimentConfig(
                algorithms=tuple(_split_csv_flag(args.algo)),
                objectives=_resolve_objectives(_split_csv_flag(args.fn), args.dim),
                population=args.pop,
                iterations=args.iters,
                runs=args.runs,
                seed=args.seed,
                acceptance_mode=args.acceptance,
                out_dir=args.out if args.out is not None else _default_out_dir(),
                emit=tuple(_split_csv_flag(args.emit)),
                plots=args.plots,
            )
            return cmd_run(config)
        if args.command == "assign":
            return cmd_assign(args)
        if args.command == "list":
            return cmd_list(args.json)
        if args.command == "wilcoxon":
            return cmd_wilcoxon(args)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (KeyboardInterrupt, BrokenPipeError):
        return 1
    except Exception as exc:  # runtime failure: exit 1, not a traceback
        print(f"failed: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())
