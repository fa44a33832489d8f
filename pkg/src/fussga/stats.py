"""Replicated experiments, summary statistics and CSV output."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from random import Random
from typing import Callable, Sequence, TextIO, Union

import numpy as np

from .diversity import DiversityObserver
from .engine import GaParams, RunRecord, run
from .problems.base import Problem
from .problems.sat import MaxSat
from .selection import SelectionScheme

Z95 = 1.96
OPTIMUM = "optimum"

ProblemSource = Union[Problem, Callable[[Random], Problem]]


@dataclass(frozen=True)
class SummaryStat:
    mean: float
    sample_stddev: float | None
    standard_error: float | None
    ci95_low: float | None
    ci95_high: float | None
    n: int


def summarize(values: Sequence[float]) -> SummaryStat:
    """Mean, n-1 standard deviation, standard error and normal 95% interval.

    With a single value only the mean is defined; the rest are None.
    """
    x = np.asarray(values, dtype=float)
    n = len(x)
    if n == 0:
        raise ValueError("cannot summarize an empty sequence")
    # fsum keeps constant inputs exact, so their spread is exactly zero
    mean = float(x[0]) if np.all(x == x[0]) else math.fsum(x) / n
    if n == 1:
        return SummaryStat(mean, None, None, None, None, 1)
    sd = math.sqrt(math.fsum((x - mean) ** 2) / (n - 1))
    se = sd / math.sqrt(n)
    return SummaryStat(mean, sd, se, mean - Z95 * se, mean + Z95 * se, n)


def scaling_fit(points: Sequence[tuple[float, float]]) -> float:
    """Least-squares slope of log(generations) against log(delta)."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 3:
        raise ValueError("need at least three (delta, generations) points")
    if np.any(pts <= 0):
        raise ValueError("scaling fit needs strictly positive values")
    slope, _ = np.polyfit(np.log(pts[:, 0]), np.log(pts[:, 1]), 1)
    return float(slope)


@dataclass(frozen=True)
class ExperimentSpec:
    """A problem run under several schemes with paired replications.

    ``problem`` is either a fixed instance or a factory called with a
    generator seeded from the replication seed, so every scheme sees the
    same instance for a given replication. ``target`` is in the problem's
    own units (a cost for minimisation problems) or ``"optimum"``.
    """

    problem: ProblemSource
    schemes: tuple[SelectionScheme, ...]
    params: GaParams
    replications: int = 1
    base_seed: int = 0
    target: float | str | None = None
    stride: int | None = None
    diversity: bool = False
    diversity_fraction: float = 0.1

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not self.schemes:
            raise ValueError("at least one selection scheme is required")

    def seed(self, replication: int) -> int:
        return self.base_seed + replication

    def instance(self, replication: int) -> Problem:
        if isinstance(self.problem, Problem):
            return self.problem
        return self.problem(Random(f"instance:{self.seed(replication)}"))


class ExperimentError(RuntimeError):
    def __init__(self, scheme: str, replication: int, cause: BaseException):
        self.scheme = scheme
        self.replication = replication
        super().__init__(f"run failed for scheme {scheme}, replication {replication}: {cause!r}")


def _engine_target(spec: ExperimentSpec, problem: Problem) -> float | None:
    if spec.target is None:
        return None
    if spec.target == OPTIMUM:
        if problem.optimum is None:
            raise ValueError(f"{problem.name} has no known optimum")
        return problem.optimum
    return problem.to_engine(float(spec.target))


def run_replication(spec: ExperimentSpec, scheme: SelectionScheme, replication: int) -> RunRecord:
    seed = spec.seed(replication)
    try:
        problem = spec.instance(replication)
        params = replace(spec.params, rng_seed=seed)
        stride = spec.stride or max(1, params.max_population // 10)
        observer = None
        if spec.diversity:
            observer = DiversityObserver(spec.diversity_fraction, seed=seed,
                                         integer=problem.integer_fitness,
                                         genomes_are_bits=isinstance(problem, MaxSat))
        return run(problem, scheme, params, target=_engine_target(spec, problem),
                   stride=stride, observer=observer,
                   observe_every=stride if observer else None)
    except Exception as exc:
        raise ExperimentError(scheme.label, replication, exc) from exc


def _run_task(args):
    return run_replication(*args)


def run_experiment(spec: ExperimentSpec, workers: int = 1) -> dict[tuple[str, int], RunRecord]:
    """Run every (scheme, replication) pair; keys are sorted for determinism.

    ``workers > 1`` farms runs out to processes, which requires a picklable
    problem source.
    """
    tasks = [(spec, s, r) for s in spec.schemes for r in range(spec.replications)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            records = list(pool.map(_run_task, tasks))
    else:
        records = [_run_task(t) for t in tasks]
    results = {(s.label, r): rec for (_, s, r), rec in zip(tasks, records)}
    return dict(sorted(results.items()))


def by_scheme(results: dict[tuple[str, int], RunRecord]) -> dict[str, list[RunRecord]]:
    grouped: dict[str, list[RunRecord]] = {}
    for (label, _), rec in results.items():
        grouped.setdefault(label, []).append(rec)
    return grouped


def generations_to_target(records: Sequence[RunRecord]) -> tuple[SummaryStat | None, int]:
    """Summary over runs that hit the target, plus the count that did not."""
    hits = [r.target_generations for r in records if r.target_reached]
    failures = len(records) - len(hits)
    return (summarize(hits) if hits else None), failures


def mean_best_at(records: Sequence[RunRecord], iteration: int) -> float:
    return float(np.mean([r.best_at(iteration) for r in records]))


TRACE_COLUMNS = ["iteration", "generation", "best_ever_fitness"]
DIVERSITY_COLUMNS = ["whole_diversity", "top_diversity"]
SUMMARY_COLUMNS = ["scheme", "mean", "stddev", "stderr", "ci_low", "ci_high", "n", "failures"]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_trace_csv(record: RunRecord, out: TextIO, diversity: bool = False) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TRACE_COLUMNS + (DIVERSITY_COLUMNS if diversity else []))
    snaps = {s.iteration: s for s in record.snapshots}
    for it, best in record.trace:
        row = [it, float(it / record.max_population), float(record.display(best))]
        if diversity:
            snap = snaps.get(it)
            row += [snap.whole_population_diversity, snap.top_fraction_diversity] if snap else [None, None]
        writer.writerow([_fmt(v) for v in row])


def summary_rows(results: dict[tuple[str, int], RunRecord]) -> list[list]:
    """One row per scheme.

    Targeted experiments summarise generations to target; otherwise the
    final best-ever fitness in problem units.
    """
    rows = []
    for label, recs in by_scheme(results).items():
        if recs[0].target is not None:
            stat, failures = generations_to_target(recs)
        else:
            stat, failures = summarize([float(r.display(r.best_ever)) for r in recs]), 0
        if stat is None:
            rows.append([label, None, None, None, None, None, 0, failures])
        else:
            rows.append([label, stat.mean, stat.sample_stddev, stat.standard_error,
                         stat.ci95_low, stat.ci95_high, stat.n, failures])
    return rows


def write_summary_csv(results: dict[tuple[str, int], RunRecord], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for row in summary_rows(results):
        writer.writerow([_fmt(v) for v in row])


def summary_csv_text(results: dict[tuple[str, int], RunRecord]) -> str:
    buf = io.StringIO()
    write_summary_csv(results, buf)
    return buf.getvalue()
