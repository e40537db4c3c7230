"""Batch driver: seeded trial grids, aggregation, and report emission.

A batch runs trials over an (n, p) grid with per-trial seeds derived as
seed + trial_index, so any single trial can be replayed in isolation.
Workers share nothing and aggregation folds reports in task order, which
makes the parallel path produce the same summary as the sequential one.
Wall-clock numbers live in a separate block that the deterministic
projection leaves out.
"""

import csv
import importlib.resources
import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import jsonschema

from .errors import InvalidInputError
from .pipeline import TrialReport, full_pipeline

__all__ = ["TrialConfig", "BatchSummary", "run_trials", "emit",
           "load_report_schema", "TRIAL_CSV_COLUMNS", "STATS_CSV_COLUMNS",
           "write_stats_csv"]

TRIAL_CSV_COLUMNS = ["n", "p", "trial", "seed", "outcome", "failure_stage",
                     "delta", "verified", "max_attempts"]
STATS_CSV_COLUMNS = ["n", "p", "statistic", "value", "samples", "seed"]

_TAG = re.compile(r"(factor|merge)\[\d+\]")


@dataclass(frozen=True)
class TrialConfig:
    """Grid of trial parameters; one cell per (n, p) pair."""

    n_values: tuple[int, ...]
    p_values: tuple[float, ...]
    seed: int = 0
    mode: str = "practical"
    trials: int = 1
    retries: int = 3
    t_max: int = 10
    q_override: float | None = None
    jobs: int = 1

    def __post_init__(self):
        if not self.n_values or not self.p_values:
            raise InvalidInputError("n and p grids must be nonempty")
        if self.trials < 0:
            raise InvalidInputError(f"need trials >= 0, got {self.trials}")
        if self.jobs < 1:
            raise InvalidInputError(f"need jobs >= 1, got {self.jobs}")
        if self.mode not in ("practical", "strict"):
            raise InvalidInputError(f"unknown mode {self.mode!r}")

    def tasks(self) -> list[tuple]:
        return [(n, p, self.seed + t, self.mode, self.retries, self.t_max,
                 self.q_override, t)
                for n in self.n_values for p in self.p_values
                for t in range(self.trials)]


def _stage_key(stage: str | None) -> str:
    """Collapse per-merge tags so breakdowns group by mechanism."""
    if stage is None:
        return "none"
    parts = [s for s in stage.split(".") if not _TAG.fullmatch(s)]
    return ".".join(parts) if parts else stage


def _run_task(task: tuple) -> TrialReport:
    n, p, seed, mode, retries, t_max, q_override, _ = task
    return full_pipeline(n=n, p=p, seed=seed, mode=mode, retries=retries,
                         t_max=t_max, q_override=q_override)


@dataclass
class BatchSummary:
    """Aggregate view of one batch: per-cell rates plus per-trial rows.

    cells holds, per (n, p), the success rate, the failure-stage breakdown
    (error trials are counted under their recording stage too, so successes
    plus breakdown always total the trials), the mean delta and the
    distribution of the worst per-edge attempt count.  runtime is
    wall-clock only and excluded from the deterministic projection.
    """

    config: dict
    cells: list[dict] = field(default_factory=list)
    trial_rows: list[dict] = field(default_factory=list)
    runtime: dict = field(default_factory=dict)

    def deterministic_projection(self) -> dict:
        return {
            "config": self.config,
            "cells": self.cells,
            "trial_rows": self.trial_rows,
        }

    def to_json_dict(self) -> dict:
        out = self.deterministic_projection()
        out["runtime"] = self.runtime
        return out


def _summarize(config: TrialConfig, tasks: list[tuple],
               reports: list[TrialReport], seconds: float) -> BatchSummary:
    rows = []
    for task, report in zip(tasks, reports):
        n, p, seed, _, _, _, _, t = task
        audit = report.ledger_audit
        rows.append({
            "n": n,
            "p": p,
            "trial": t,
            "seed": seed,
            "outcome": report.outcome,
            "failure_stage": report.failure_stage or "",
            "delta": report.delta if report.delta is not None else "",
            "verified": (report.verification["ok"]
                         if report.verification is not None else ""),
            "max_attempts": audit["max_attempts"] if audit is not None else "",
        })

    cells = []
    for n in config.n_values:
        for p in config.p_values:
            cell_rows = [(task, rep) for task, rep in zip(tasks, reports)
                         if task[0] == n and task[1] == p]
            successes = sum(1 for _, r in cell_rows if r.outcome == "SUCCESS")
            errors = sum(1 for _, r in cell_rows if r.outcome == "ERROR")
            breakdown: dict[str, int] = {}
            for _, r in cell_rows:
                if r.outcome != "SUCCESS":
                    key = _stage_key(r.failure_stage)
                    breakdown[key] = breakdown.get(key, 0) + 1
            deltas = [r.delta for _, r in cell_rows if r.delta is not None]
            attempts: dict[str, int] = {}
            for _, r in cell_rows:
                if r.ledger_audit is not None:
                    k = str(r.ledger_audit["max_attempts"])
                    attempts[k] = attempts.get(k, 0) + 1
            total = len(cell_rows)
            cells.append({
                "n": n,
                "p": p,
                "trials": total,
                "successes": successes,
                "success_rate": successes / total if total else None,
                "errors": errors,
                "failure_stages": {k: breakdown[k] for k in sorted(breakdown)},
                "mean_delta": sum(deltas) / len(deltas) if deltas else None,
                "max_attempts_histogram":
                    {k: attempts[k] for k in sorted(attempts, key=int)},
            })

    runtime = {
        "total_seconds": seconds,
        "mean_seconds_per_trial": seconds / len(tasks) if tasks else 0.0,
    }
    return BatchSummary(config={
        "n_values": list(config.n_values),
        "p_values": list(config.p_values),
        "seed": config.seed,
        "mode": config.mode,
        "trials": config.trials,
        "retries": config.retries,
        "t_max": config.t_max,
        "q_override": config.q_override,
    }, cells=cells, trial_rows=rows, runtime=runtime)


def run_trials(config: TrialConfig) -> tuple[BatchSummary, list[TrialReport]]:
    """Run the whole grid and aggregate; deterministic given the config.

    With jobs > 1 trials run in a process pool; reports are still folded in
    task order, so the summary's deterministic projection is identical to a
    sequential run.
    """
    tasks = config.tasks()
    start = time.perf_counter()
    if config.jobs == 1 or len(tasks) <= 1:
        reports = [_run_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(_run_task, tasks, chunksize=1))
    seconds = time.perf_counter() - start
    return _summarize(config, tasks, reports, seconds), reports


def load_report_schema() -> dict:
    ref = importlib.resources.files("hampack") / "schemas" / "trial_report.schema.json"
    return json.loads(ref.read_text(encoding="utf-8"))


def _validate_report_dict(doc: dict) -> None:
    # a schema violation here means the pipeline built a malformed report,
    # which is a bug, not a user error
    jsonschema.validate(doc, load_report_schema())


def emit(obj, format: str, path) -> None:
    """Write a report or summary as json or csv.

    Report JSON is validated against the shipped schema before writing.
    CSV uses one row per trial with TRIAL_CSV_COLUMNS; an empty batch
    yields a header-only file.
    """
    path = str(path)
    if format == "json":
        if isinstance(obj, TrialReport):
            doc = obj.to_json_dict()
            _validate_report_dict(doc)
            payload = json.dumps(doc, indent=2) + "\n"
        elif isinstance(obj, BatchSummary):
            payload = json.dumps(obj.to_json_dict(), indent=2) + "\n"
        else:
            raise InvalidInputError(f"cannot emit {type(obj).__name__} as json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)
        return
    if format == "csv":
        if isinstance(obj, BatchSummary):
            rows = obj.trial_rows
        elif isinstance(obj, TrialReport):
            audit = obj.ledger_audit
            rows = [{
                "n": obj.n, "p": obj.p, "trial": 0, "seed": obj.seed,
                "outcome": obj.outcome,
                "failure_stage": obj.failure_stage or "",
                "delta": obj.delta if obj.delta is not None else "",
                "verified": (obj.verification["ok"]
                             if obj.verification is not None else ""),
                "max_attempts": audit["max_attempts"] if audit is not None else "",
            }]
        else:
            raise InvalidInputError(f"cannot emit {type(obj).__name__} as csv")
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=TRIAL_CSV_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
        return
    raise InvalidInputError(f"unknown format {format!r}")


def write_stats_csv(rows: list[dict], path) -> None:
    """Probe output as (n, p, statistic, value, samples, seed) rows."""
    with open(str(path), "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=STATS_CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
