#!/usr/bin/env python3
"""
fregress: functional regression from the command line
Simulate data, fit and apply models, select penalties and run benchmarks.

Usage:
    fregress simulate --scenario A_Exponential --n 5 --T 50 --q 5 --kappa 1 --out data/
    fregress fit --data data/train.csv --lambda1 1e-6 --out model/
    fregress predict --model model/model.json --data data/test.csv --out pred/
    fregress cv --data data/train.csv --preset fof --out cv/
    fregress bench --scenario A_Exponential --n 5 --T 50 --replicates 100 --out bench/
    fregress backtest --data panel.csv --split-points 7,8,9 --out backtest/

Every command accepts --config <json>, --seed, --out and --json. Values
from the config file are overridden by flags given on the command line.
"""

import argparse
import json as json_lib
import sys
from pathlib import Path
from typing import Optional

import numpy as np
import structlog
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape
from rich.panel import Panel
from rich.table import Table

from src.bench.harness import run_bench
from src.data.io import format_row, load_csv, load_curve_panel, save_csv, save_oracle
from src.data.simulation import simulate
from src.errors import FunctionalRegressionError, GridError, ParameterError
from src.estimator.serialization import load_model, save_model
from src.estimator.solver import fit
from src.estimator.workspace import precompute
from src.evaluation.backtest import rolling_backtest
from src.evaluation.prediction import PredictionRequest, predict
from src.log_config import configure_logging
from src.models import Command, CVConfig, PenaltyConfig, RunConfig, SimulationScenario
from src.tuning.cross_validation import cv_select
from src.tuning.presets import default_preset, preset_config

console = Console()
err_console = Console(stderr=True)
logger = structlog.get_logger()

EXIT_OK = 0
EXIT_ERROR = 2


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


class FregressCLI:
    """Command implementations over a resolved RunConfig"""

    def __init__(self, json_output: bool = False):
        self.json_output = json_output

    def _output(self, data: dict, human_message=None):
        """Output data in JSON or human-readable format"""
        if self.json_output:
            print(json_lib.dumps(data, indent=2, default=str))
        elif human_message is not None:
            console.print(human_message)

    @staticmethod
    def _out_dir(cfg: RunConfig) -> Path:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        return out

    @staticmethod
    def _require(value: Optional[str], flag: str) -> str:
        if not value:
            raise ParameterError(f"{flag} is required for this command")
        return value

    @staticmethod
    def _cv_config(cfg: RunConfig, p: int) -> CVConfig:
        if cfg.cv is not None:
            return cfg.cv
        return preset_config(cfg.preset or default_preset(p), folds=cfg.folds, seed=cfg.seed)

    def simulate(self, cfg: RunConfig) -> dict:
        """Training and test CSVs plus the oracle file from one draw"""
        out = self._out_dir(cfg)
        n_test = max(1, cfg.T // 2)
        scenario = SimulationScenario(
            kind=cfg.scenario, q=cfg.q, kappa=cfg.kappa, p=cfg.p, seed=cfg.seed, grid_kind=cfg.grid_kind
        )
        data, oracle = simulate(scenario, cfg.n, cfg.n, cfg.T + n_test)
        train = data.subset(np.arange(cfg.T))
        test = data.subset(np.arange(cfg.T, data.T))

        train_path = save_csv(train, out / "train.csv")
        test_path = save_csv(test, out / "test.csv")
        oracle_path = save_oracle(oracle, cfg.seed, out / "oracle.json", train.x_basis, test.x_basis)

        result = {
            "train": str(train_path),
            "test": str(test_path),
            "oracle": str(oracle_path),
            "train_subjects": train.T,
            "test_subjects": test.T,
        }
        self._output(result, Panel(
            f"[bold]Train:[/bold] {train_path} ({train.T} subjects)\n"
            f"[bold]Test:[/bold]  {test_path} ({test.T} subjects)\n"
            f"[bold]Oracle:[/bold] {oracle_path}",
            title=f"Simulated {cfg.scenario.value}",
            border_style="green"
        ))
        return result

    def fit(self, cfg: RunConfig) -> dict:
        """Fit at the configured penalty, selecting it by cross-validation when absent"""
        out = self._out_dir(cfg)
        dataset = load_csv(self._require(cfg.data, "--data"))
        workspace = precompute(dataset)
        penalty = cfg.penalty
        if penalty is None or cfg.tune or cfg.cv is not None or cfg.preset:
            penalty, _ = cv_select(
                dataset, None, self._cv_config(cfg, dataset.p), base=penalty, n_jobs=cfg.n_jobs
            )
        fitted = fit(dataset, None, penalty, workspace=workspace)
        model_path = save_model(fitted, out / "model.json")

        result = {
            "model": str(model_path),
            "lambda1": penalty.lambda1,
            "lambda2": penalty.lambda2,
            "lambda3": penalty.lambda3,
            "converged": fitted.converged,
            "iterations": fitted.iterations,
            "objective": fitted.objective_trace[-1],
            "active_groups": fitted.active_groups(),
        }
        if not fitted.converged:
            result["warning"] = f"not converged after {fitted.iterations} iterations"
        color = "green" if fitted.converged else "yellow"
        self._output(result, Panel(
            "\n".join(f"[bold]{k}:[/bold] {v}" for k, v in result.items()),
            title="Fit",
            border_style=color
        ))
        return result

    def predict(self, cfg: RunConfig) -> dict:
        """Predicted curves for every subject of a dataset"""
        out = self._out_dir(cfg)
        fitted = load_model(self._require(cfg.model, "--model"))
        dataset = load_csv(self._require(cfg.data, "--data"))
        if not dataset.x_grid.same_as(fitted.x_grid):
            raise GridError("dataset x_grid differs from the model's training x_grid")
        target = np.asarray(cfg.target_points if cfg.target_points else fitted.y_grid.points, dtype=float)
        request = PredictionRequest(X_new=dataset.X, Z_new=dataset.Z, target_points=target)
        predicted = predict(fitted, request)

        path = out / "predictions.csv"
        lines = [f"#points: {format_row(target)}"]
        lines.extend(format_row(predicted[:, t]) for t in range(predicted.shape[1]))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")

        result = {"predictions": str(path), "subjects": int(predicted.shape[1]), "points": int(target.size)}
        self._output(result, f"[green]Wrote {predicted.shape[1]} predicted curves to {path}[/green]")
        return result

    def cv(self, cfg: RunConfig) -> dict:
        """Penalty selection report and score table"""
        out = self._out_dir(cfg)
        dataset = load_csv(self._require(cfg.data, "--data"))
        cvcfg = self._cv_config(cfg, dataset.p)
        base = cfg.penalty or PenaltyConfig(lambda1=1.0)
        selected, table = cv_select(dataset, None, cvcfg, base=base, n_jobs=cfg.n_jobs)

        scores_path = out / "cv_scores.csv"
        table.to_csv(scores_path, index=False, float_format="%.17g")
        report = {
            "lambda1": selected.lambda1,
            "lambda2": selected.lambda2,
            "lambda3": selected.lambda3,
            "folds": cvcfg.folds,
            "grid_size": cvcfg.size,
            "scores": scores_path.name,
        }
        report_path = out / "cv_selected.json"
        report_path.write_text(json_lib.dumps(report, indent=2) + "\n", encoding="utf-8")

        best = table.drop_duplicates(["lambda1", "lambda2", "lambda3"]).nsmallest(5, "mean_score")
        human = Table(title="Best grid points", show_header=True, header_style="bold cyan")
        for column in ("lambda1", "lambda2", "lambda3", "mean_score"):
            human.add_column(column, justify="right")
        for _, row in best.iterrows():
            human.add_row(*(f"{row[c]:.3g}" for c in ("lambda1", "lambda2", "lambda3", "mean_score")))
        self._output(report, human)
        return report

    def bench(self, cfg: RunConfig) -> dict:
        """Replicate table for every configured cell"""
        out = self._out_dir(cfg)
        cvcfg = cfg.cv
        if cvcfg is None and cfg.preset:
            cvcfg = preset_config(cfg.preset, folds=cfg.folds, seed=cfg.seed)
        table = run_bench(
            cfg.cells, cfg.replicates, seed=cfg.seed, cvcfg=cvcfg, base=cfg.penalty,
            n_jobs=cfg.n_jobs, timing=cfg.timing
        )
        path = out / "bench.csv"
        table.to_csv(path, index=False, float_format="%.17g")

        aggregate = table[table["seed"] == "avg"]
        result = {"results": str(path), "cells": aggregate.to_dict(orient="records")}
        human = Table(title="RMISE x 100", show_header=True, header_style="bold cyan")
        for column in ("scenario", "n", "T", "q", "p", "kappa", "rmise_x100", "reference_x100"):
            human.add_column(column, justify="right")
        for _, row in aggregate.iterrows():
            human.add_row(
                str(row["scenario"]), str(row["n"]), str(row["T"]), str(row["q"]), str(row["p"]),
                f"{row['kappa']:g}", f"{row['rmise_x100']:.2f}",
                "-" if np.isnan(row["reference_x100"]) else f"{row['reference_x100']:.2f}",
            )
        self._output(result, human)
        return result

    def backtest(self, cfg: RunConfig) -> dict:
        """Two-fold rolling-origin backtest of a curve panel"""
        out = self._out_dir(cfg)
        panel = load_curve_panel(self._require(cfg.data, "--data"))
        p = panel.p if cfg.use_covariates else 0
        backtest = rolling_backtest(
            panel, cfg.split_points, self._cv_config(cfg, p), horizon=cfg.horizon,
            base=cfg.penalty, use_covariates=cfg.use_covariates
        )
        summary = backtest.summary()
        backtest.curves.to_csv(out / "backtest_curves.csv", index=False, float_format="%.17g")
        backtest.models.to_csv(out / "backtest_models.csv", index=False, float_format="%.17g")
        summary.to_csv(out / "backtest_summary.csv", index=False, float_format="%.17g")

        result = {"summary": summary.to_dict(orient="records"), "out": str(out)}
        human = Table(title="Backtest", show_header=True, header_style="bold cyan")
        for column in ("split_point", "rmse", "mae", "models_without_covariates"):
            human.add_column(column, justify="right")
        for _, row in summary.iterrows():
            human.add_row(f"{row['split_point']:g}", f"{row['rmse']:.4f}", f"{row['mae']:.4f}",
                          str(int(row["models_without_covariates"])))
        self._output(result, human)
        return result

    def run(self, cfg: RunConfig) -> dict:
        handlers = {
            Command.SIMULATE: self.simulate,
            Command.FIT: self.fit,
            Command.PREDICT: self.predict,
            Command.CV: self.cv,
            Command.BENCH: self.bench,
            Command.BACKTEST: self.backtest,
        }
        return handlers[cfg.command](cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fregress",
        description="Functional linear regression with functional and vector covariates",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  fregress simulate --n 5 --T 50 --q 5 --kappa 1 --seed 1 --out data
  fregress fit --data data/train.csv --out model
  fregress predict --model model/model.json --data data/test.csv --out pred
  fregress cv --data data/train.csv --preset fof --json
  fregress bench --n 5 --T 50 --replicates 100 --out bench
        """
    )

    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--config", help="JSON run configuration")
    shared.add_argument("--seed", type=int, help="Random seed")
    shared.add_argument("--out", help="Output directory")
    shared.add_argument("--json", "-j", action="store_true", help="Output in JSON format (for scripting)")
    shared.add_argument("--verbose", "-v", action="store_true", help="Debug logging on stderr")

    design = argparse.ArgumentParser(add_help=False)
    design.add_argument("--scenario", choices=["A_Exponential", "B_Random"])
    design.add_argument("--n", type=int, help="Sample points per curve (n1 = n2)")
    design.add_argument("--T", type=int, help="Training subjects")
    design.add_argument("--q", type=int, help="Basis dimension")
    design.add_argument("--kappa", type=float, help="Signal scale")
    design.add_argument("--p", type=int, help="Vector covariates")

    penalty = argparse.ArgumentParser(add_help=False)
    penalty.add_argument("--lambda1", type=float)
    penalty.add_argument("--lambda2", type=float)
    penalty.add_argument("--lambda3", type=float)
    penalty.add_argument("--epsilon", type=float, help="Objective-decrease tolerance")
    penalty.add_argument("--l-max", type=int, help="Maximum outer iterations")

    grids = argparse.ArgumentParser(add_help=False)
    grids.add_argument("--preset", help="Named lambda grid (fof, mixed)")
    grids.add_argument("--folds", type=int)
    grids.add_argument("--lambda1-grid", type=_floats, help="Comma-separated lambda1 values")
    grids.add_argument("--lambda2-grid", type=_floats, help="Comma-separated lambda2 values")
    grids.add_argument("--lambda3-grid", type=_floats, help="Comma-separated lambda3 values")
    grids.add_argument("--n-jobs", type=int, help="Worker threads")

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    sim = subparsers.add_parser("simulate", parents=[shared, design], help="Simulate train/test data")
    sim.add_argument("--grid-kind", choices=["equispaced", "random"])

    fit_parser = subparsers.add_parser("fit", parents=[shared, penalty, grids], help="Fit a model")
    fit_parser.add_argument("--data", help="Training dataset CSV")

    pred = subparsers.add_parser("predict", parents=[shared], help="Predict curves with a fitted model")
    pred.add_argument("--model", help="Model JSON")
    pred.add_argument("--data", help="Dataset CSV on the training x_grid")
    pred.add_argument("--target-points", type=_floats, help="Comma-separated points in [0, 1]")

    cv_parser = subparsers.add_parser("cv", parents=[shared, penalty, grids], help="Cross-validate penalties")
    cv_parser.add_argument("--data", help="Training dataset CSV")

    bench = subparsers.add_parser("bench", parents=[shared, design, penalty, grids], help="Simulation benchmark")
    bench.add_argument("--replicates", type=int)
    bench.add_argument("--no-timing", action="store_true", help="Write runtime_ms as 0")

    back = subparsers.add_parser("backtest", parents=[shared, penalty, grids], help="Rolling-origin backtest")
    back.add_argument("--data", help="Curve panel CSV")
    back.add_argument("--split-points", type=_floats, help="Comma-separated prediction times")
    back.add_argument("--horizon", type=float)
    back.add_argument("--no-covariates", action="store_true", help="Function-on-function models only")

    return parser


_PLAIN_FLAGS = (
    "seed", "out", "scenario", "n", "T", "q", "kappa", "p", "grid_kind", "data", "model", "target_points",
    "preset", "folds", "n_jobs", "replicates", "split_points", "horizon",
)


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Config file values overridden by flags that were given"""
    raw: dict = {}
    if getattr(args, "config", None):
        try:
            raw = json_lib.loads(Path(args.config).read_text(encoding="utf-8"))
        except json_lib.JSONDecodeError as e:
            raise ParameterError(f"{args.config}: invalid JSON ({e.msg} at line {e.lineno})") from e
    raw["command"] = args.command

    for name in _PLAIN_FLAGS:
        value = getattr(args, name, None)
        if value is not None:
            raw[name] = value
    if getattr(args, "no_timing", False):
        raw["timing"] = False
    if getattr(args, "no_covariates", False):
        raw["use_covariates"] = False

    penalty_flags = {
        key: getattr(args, attr, None)
        for key, attr in (("lambda1", "lambda1"), ("lambda2", "lambda2"), ("lambda3", "lambda3"),
                          ("epsilon", "epsilon"), ("l_max", "l_max"))
    }
    penalty_flags = {k: v for k, v in penalty_flags.items() if v is not None}
    if penalty_flags:
        merged = {**(raw.get("penalty") or {}), **penalty_flags}
        if "lambda1" not in merged:
            # placeholder; the grid supplies lambda1
            merged["lambda1"] = 1.0
            raw["tune"] = True
        raw["penalty"] = merged

    grid_flags = {
        key: getattr(args, key, None) for key in ("lambda1_grid", "lambda2_grid", "lambda3_grid")
    }
    grid_flags = {k: v for k, v in grid_flags.items() if v is not None}
    if grid_flags:
        merged = {**(raw.get("cv") or {}), **grid_flags}
        merged.setdefault("seed", raw.get("seed", 0))
        if getattr(args, "folds", None) is not None:
            merged["folds"] = args.folds
        raw["cv"] = merged

    return RunConfig.model_validate(raw)


def _error_line(error: FunctionalRegressionError | ValidationError | OSError) -> dict:
    if isinstance(error, FunctionalRegressionError):
        return error.to_dict()
    if isinstance(error, ValidationError):
        first = error.errors()[0]
        location = ".".join(str(part) for part in first.get("loc", ()))
        return {"error": "parameter", "message": f"{location}: {first['msg']}" if location else first["msg"]}
    return {"error": "io", "message": str(error)}


def run(argv: Optional[list[str]] = None) -> int:
    """Parse arguments, execute one command and return the exit code"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return EXIT_ERROR

    configure_logging(level="DEBUG" if args.verbose else None)
    cli = FregressCLI(json_output=args.json)
    try:
        cfg = resolve_config(args)
        cli.run(cfg)
    except (FunctionalRegressionError, ValidationError, OSError) as e:
        line = _error_line(e)
        logger.debug("command_failed", command=args.command, **line)
        if not args.json:
            err_console.print(f"[red]{args.command} failed: {escape(line['message'])}[/red]")
        print(json_lib.dumps(line))
        return EXIT_ERROR
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
