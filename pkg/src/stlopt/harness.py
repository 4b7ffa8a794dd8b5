"""Experiment orchestration: metric x optimizer runs, SR/TS statistics and
machine-readable result files."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

import numpy as np

from .exceptions import StlError
from .optim.driver import RunRecord, optimize
from .semantics import MetricConfig
from .task import (
    TaskSpec,
    TrajectoryParams,
    benchmark_eq2,
    build_trajectory,
    load_task_file,
    objective_detail,
)
from .trace import save_trace_csv

FAIL = "Fail"


@dataclass
class ExperimentConfig:
    method: str
    metric: MetricConfig
    budget: int = 60
    seeds: list[int] = field(default_factory=lambda: [0])
    task: str = "eq2"
    output_dir: str | None = None

    def __post_init__(self):
        if self.method not in ("bo", "cmaes", "random"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if not self.seeds:
            raise ValueError("seeds must be non-empty")

    @classmethod
    def from_json(cls, data: dict) -> "ExperimentConfig":
        try:
            metric = MetricConfig(
                kind=data["metric"]["kind"],
                k=float(data["metric"].get("k", 10.0)),
                nu=float(data["metric"].get("nu", 2.0)),
                agm_scales=data["metric"].get("agm_scales"),
            )
            return cls(
                method=data["method"],
                metric=metric,
                budget=int(data.get("budget", 60)),
                seeds=[int(s) for s in data["seeds"]],
                task=data.get("task", "eq2"),
                output_dir=data.get("output_dir"),
            )
        except KeyError as exc:
            raise ValueError(f"missing config field: {exc.args[0]}") from None

    def to_json(self) -> dict:
        metric: dict = {"kind": self.metric.kind, "k": self.metric.k, "nu": self.metric.nu}
        if self.metric.agm_scales is not None:
            metric["agm_scales"] = dict(sorted(self.metric.agm_scales.items()))
        return {
            "method": self.method,
            "metric": metric,
            "budget": self.budget,
            "seeds": list(self.seeds),
            "task": self.task,
            "output_dir": self.output_dir,
        }


@dataclass
class SeedResult:
    seed: int
    records: list[RunRecord]
    sr: float  # percentage of evaluations satisfying the Boolean oracle
    ts: int | None  # first satisfying evaluation index, None if never


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    per_seed: list[SeedResult]
    mean_sr: float
    median_ts: float | None  # over satisfying seeds only


def load_task(name_or_path: str) -> TaskSpec:
    if name_or_path == "eq2":
        return benchmark_eq2()
    if os.path.exists(name_or_path):
        return load_task_file(name_or_path)
    raise ValueError(f"unknown task {name_or_path!r} (built-ins: eq2)")


def _with_default_agm_scales(metric: MetricConfig) -> MetricConfig:
    if metric.kind != "agm" or metric.agm_scales:
        return metric
    # planar traces carry x and y; the unit workspace makes 1.0 a safe half-range
    scales = {ch: 1.0 for ch in ("x", "y")}
    return MetricConfig(metric.kind, metric.k, metric.nu, scales)


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    """One optimize() run per seed; the satisfied flag always comes from the
    Boolean oracle so SR/TS are comparable across metrics."""
    task = load_task(cfg.task)
    metric = _with_default_agm_scales(cfg.metric)
    per_seed = []
    for seed in cfg.seeds:
        flags: list[bool] = []

        def wrapped(p):
            value, sat, _ = objective_detail(task, metric, p)
            flags.append(sat)
            return value

        records = optimize(wrapped, task.bounds, cfg.budget, cfg.method, seed)
        for record, sat in zip(records, flags):
            record.satisfied = sat
        n_sat = sum(flags)
        ts = next((r.index for r in records if r.satisfied), None)
        per_seed.append(SeedResult(seed, records, 100.0 * n_sat / cfg.budget, ts))
    mean_sr = float(np.mean([s.sr for s in per_seed]))
    ts_values = [s.ts for s in per_seed if s.ts is not None]
    median_ts = float(np.median(ts_values)) if ts_values else None
    return ExperimentResult(cfg, per_seed, mean_sr, median_ts)


def summary_dict(result: ExperimentResult) -> dict:
    return {
        "config": result.config.to_json(),
        "per_seed": [
            {
                "seed": s.seed,
                "sr": s.sr,
                "ts": s.ts if s.ts is not None else FAIL,
            }
            for s in result.per_seed
        ],
        "mean_sr": result.mean_sr,
        "median_ts": result.median_ts if result.median_ts is not None else FAIL,
    }


def emit_results(result: ExperimentResult, out_dir: str) -> dict[str, str]:
    """Write runs.csv, summary.json and trace_best.csv; returns the paths."""
    task = load_task(result.config.task)
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "runs": os.path.join(out_dir, "runs.csv"),
        "summary": os.path.join(out_dir, "summary.json"),
        "trace_best": os.path.join(out_dir, "trace_best.csv"),
    }

    try:
        with open(paths["runs"], "w", encoding="utf-8") as fh:
            names = ",".join(task.param_names)
            fh.write(f"seed,eval,{names},robustness,satisfied,best_so_far\n")
            for s in result.per_seed:
                for r in s.records:
                    params = ",".join(repr(float(v)) for v in r.params)
                    fh.write(
                        f"{s.seed},{r.index},{params},{repr(r.value)},"
                        f"{str(bool(r.satisfied)).lower()},{repr(r.best_so_far)}\n"
                    )

        with open(paths["summary"], "w", encoding="utf-8") as fh:
            json.dump(summary_dict(result), fh, indent=2, sort_keys=True)
            fh.write("\n")

        best_record = max(
            (r for s in result.per_seed for r in s.records), key=lambda r: r.value
        )
        best_trace = build_trajectory(
            TrajectoryParams.from_vector(best_record.params),
            task.sample_rate,
            task.home,
        )
        save_trace_csv(best_trace, paths["trace_best"])
    except OSError as exc:
        raise StlError(f"cannot write results under {out_dir}: {exc}") from exc
    return paths
