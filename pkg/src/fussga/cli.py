"""Command-line front end: ``fussga run | generate | inspect``.

Machine-readable output (CSV) goes to stdout or to files under ``--out``;
progress and errors go to stderr. Exit status is 0 on success, 2 for
usage or input errors and 1 when an experiment fails while running.
"""

from __future__ import annotations

import argparse
import csv
import functools
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from random import Random

import numpy as np

from .engine import GaParams
from .errors import ParseError
from .problems import CuboidFunction, Deceptive2d, Deceptive2dSpec, MaxSat, SetCover, TravelingSalesman
from .problems.base import Problem
from .problems.sat import parse_dimacs
from .problems.scp import parse_orlib
from .problems.synthetic import cuboid_function_generate, format_cuboids, parse_cuboids
from .problems.tsp import format_matrix, load_instance, random_tsp_instance
from .selection import SelectionScheme
from .stats import ExperimentError, ExperimentSpec, by_scheme, run_experiment, write_summary_csv, write_trace_csv

log = logging.getLogger("fussga")

PROBLEMS = ("deceptive2d", "cuboid", "tsp", "scp", "sat")
GENERATE_KINDS = ("cuboid", "tsp-random")
DEFAULT_BUDGET_GENERATIONS = 100
DEFAULT_CITIES = 20


@dataclass(frozen=True)
class Defaults:
    pop: int
    crossover: float = 0.5
    mutate: float = 0.5
    reps: int = 10
    init_pop: int | None = None
    schemes: tuple[str, ...] = ("fuss", "tour2", "tour5", "tour15")
    target: str | None = None


# per-problem settings used in the original experiments
DEFAULTS = {
    "deceptive2d": Defaults(10_000, crossover=0.25, reps=20, init_pop=10,
                            schemes=("fussint", "tour2", "rand"), target="optimum"),
    "cuboid": Defaults(10_000, reps=10, schemes=("fussint", "tour2"), target="optimum"),
    "tsp": Defaults(5_000),
    "tsp-coordinates": Defaults(5_000, crossover=1.0, mutate=0.2, reps=5),
    "scp": Defaults(5_000, crossover=1.0, reps=30, schemes=("fussint", "tour2", "tour5", "tour15")),
    "sat": Defaults(10_000, reps=30, schemes=("fussint", "tour2", "tour5", "tour15")),
}


@dataclass
class CliConfig:
    subcommand: str
    problem: str | None = None
    instance: Path | None = None
    schemes: list[SelectionScheme] = field(default_factory=list)
    params: GaParams | None = None
    reps: int = 1
    seed: int = 0
    out: Path | None = None
    target: float | str | None = None
    diversity: bool = False
    stride: int | None = None
    delta: float = 0.1
    cities: int = DEFAULT_CITIES
    workers: int = 1
    kind: str | None = None


def _probability(text: str) -> float:
    try:
        p = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= p <= 1.0:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {p}")
    return p


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _scheme(text: str) -> SelectionScheme:
    try:
        return SelectionScheme.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _target(text: str) -> float | str:
    if text == "optimum":
        return text
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError("target must be a number or 'optimum'") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fussga",
        description="Steady-state GA experiments with fitness uniform and tournament selection.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    r = sub.add_parser("run", help="run replicated experiments and write CSV",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    r.add_argument("--problem", choices=PROBLEMS, required=True)
    r.add_argument("--instance", type=Path,
                   help="instance file (required for scp and sat; optional for cuboid and tsp)")
    r.add_argument("--scheme", type=_scheme, action="append", dest="schemes",
                   help="fuss, fussint, rand or tourN; repeatable (default: per problem)")
    r.add_argument("--pop", type=_positive_int, help="maximum population (default: per problem)")
    r.add_argument("--init-pop", type=_positive_int, help="initial population (default: --pop)")
    r.add_argument("--crossover-prob", type=_probability)
    r.add_argument("--mutate-prob", type=_probability)
    r.add_argument("--budget", type=int,
                   help=f"iterations per run (default: {DEFAULT_BUDGET_GENERATIONS} generations)")
    r.add_argument("--target", type=_target,
                   help="stop when best-ever reaches this value in problem units, or 'optimum'")
    r.add_argument("--reps", type=_positive_int, help="replications (default: per problem)")
    r.add_argument("--seed", type=int, default=0, help="base seed; replication r uses seed + r")
    r.add_argument("--out", type=Path, help="directory for summary, curve and trace CSVs")
    r.add_argument("--diversity", action="store_true", help="add Hamming diversity columns (sat only)")
    r.add_argument("--stride", type=_positive_int, help="trace stride in iterations (default: pop/10)")
    r.add_argument("--delta", type=float, default=0.1, help="deceptive2d optimum width")
    r.add_argument("--cities", type=_positive_int, default=DEFAULT_CITIES,
                   help="cities for a generated tsp matrix")
    r.add_argument("--workers", type=_positive_int, default=1, help="parallel worker processes")

    g = sub.add_parser("generate", help="write a random instance file")
    g.add_argument("kind", choices=GENERATE_KINDS)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--cities", type=_positive_int, default=DEFAULT_CITIES)
    g.add_argument("--out", type=Path, help="output file (default: stdout)")

    i = sub.add_parser("inspect", help="parse an instance file and print its summary as CSV")
    i.add_argument("--problem", choices=("cuboid", "tsp", "scp", "sat"), required=True)
    i.add_argument("--instance", type=Path, required=True)
    return parser


def _problem_defaults(problem: str, instance) -> Defaults:
    if problem == "tsp" and instance is not None and instance.coordinates is not None:
        return DEFAULTS["tsp-coordinates"]
    return DEFAULTS[problem]


def parse_args(argv=None) -> CliConfig:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.subcommand == "generate":
        return CliConfig("generate", kind=ns.kind, seed=ns.seed, cities=ns.cities, out=ns.out)
    if ns.instance is not None and not ns.instance.is_file():
        parser.error(f"instance file not found: {ns.instance}")
    if ns.subcommand == "inspect":
        return CliConfig("inspect", problem=ns.problem, instance=ns.instance)

    if ns.problem in ("scp", "sat") and ns.instance is None:
        parser.error(f"--problem {ns.problem} needs --instance")
    # tsp defaults depend on the instance layout, so peek at it here
    peek = _load_tsp(ns.instance) if ns.problem == "tsp" and ns.instance else None
    d = _problem_defaults(ns.problem, peek)
    schemes = ns.schemes or [SelectionScheme.parse(s) for s in d.schemes]
    if ns.problem == "tsp" and any(s.needs_integer_fitness for s in schemes):
        parser.error("fussint needs integer fitness; use fuss for tsp")
    pop = ns.pop or d.pop
    init = ns.init_pop if ns.init_pop is not None else (min(d.init_pop, pop) if d.init_pop else None)
    budget = ns.budget if ns.budget is not None else DEFAULT_BUDGET_GENERATIONS * pop
    if budget < 0:
        parser.error("--budget must be >= 0")
    try:
        params = GaParams(max_population=pop, initial_population=init,
                          crossover_probability=d.crossover if ns.crossover_prob is None else ns.crossover_prob,
                          mutate_probability=d.mutate if ns.mutate_prob is None else ns.mutate_prob,
                          iteration_budget=budget, rng_seed=ns.seed)
        if ns.problem == "deceptive2d":
            Deceptive2dSpec(delta=ns.delta)
    except ValueError as exc:
        parser.error(str(exc))
    if ns.diversity and ns.problem != "sat":
        parser.error("--diversity is only defined for sat")
    return CliConfig("run", problem=ns.problem, instance=ns.instance, schemes=schemes, params=params,
                     reps=ns.reps or d.reps, seed=ns.seed, out=ns.out,
                     target=ns.target if ns.target is not None else d.target,
                     diversity=ns.diversity, stride=ns.stride, delta=ns.delta, cities=ns.cities,
                     workers=ns.workers)


def _load_tsp(path: Path):
    return load_instance(path.read_text())


def _random_cuboid(rng: Random) -> Problem:
    return CuboidFunction(cuboid_function_generate(rng))


def _random_tsp(cities: int, rng: Random) -> Problem:
    return TravelingSalesman(random_tsp_instance(cities, rng))


def build_problem(cfg: CliConfig):
    """A fixed problem, or a per-replication factory for generated instances."""
    path = cfg.instance
    if cfg.problem == "deceptive2d":
        return Deceptive2d(Deceptive2dSpec(delta=cfg.delta))
    if cfg.problem == "cuboid":
        return CuboidFunction(parse_cuboids(path.read_text())) if path else _random_cuboid
    if cfg.problem == "tsp":
        return TravelingSalesman(_load_tsp(path)) if path else functools.partial(_random_tsp, cfg.cities)
    if cfg.problem == "scp":
        return SetCover(parse_orlib(path.read_text()))
    return MaxSat(parse_dimacs(path.read_text()))


def _curves(results) -> tuple[list[str], list[list]]:
    """Mean best-ever per scheme on the shared trace grid."""
    grouped = by_scheme(results)
    labels = list(grouped)
    first = next(iter(results.values()))
    iterations = sorted({it for recs in grouped.values() for r in recs for it, _ in r.trace})
    rows = []
    for it in iterations:
        row = [it, it / first.max_population]
        for label in labels:
            recs = grouped[label]
            row.append(float(np.mean([r.display(r.best_at(it)) for r in recs])))
        rows.append(row)
    return ["iteration", "generation"] + labels, rows


def write_outputs(cfg: CliConfig, results) -> None:
    if cfg.out is None:
        write_summary_csv(results, sys.stdout)
        return
    cfg.out.mkdir(parents=True, exist_ok=True)
    with open(cfg.out / "summary.csv", "w", newline="") as f:
        write_summary_csv(results, f)
    header, rows = _curves(results)
    with open(cfg.out / "curves.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(header)
        w.writerows([[repr(v) if isinstance(v, float) else v for v in row] for row in rows])
    for (label, rep), rec in results.items():
        with open(cfg.out / f"trace-{label}-{rep}.csv", "w", newline="") as f:
            write_trace_csv(rec, f, diversity=cfg.diversity)


def cmd_run(cfg: CliConfig) -> int:
    problem = build_problem(cfg)
    spec = ExperimentSpec(problem, tuple(cfg.schemes), cfg.params, replications=cfg.reps,
                          base_seed=cfg.seed, target=cfg.target, stride=cfg.stride,
                          diversity=cfg.diversity)
    log.info("%s: schemes %s, %d replications, population %d, budget %d",
             cfg.problem, ",".join(s.label for s in cfg.schemes), cfg.reps,
             cfg.params.max_population, cfg.params.iteration_budget)
    try:
        results = run_experiment(spec, workers=cfg.workers)
    except ExperimentError as exc:
        log.error("%s", exc)
        return 1
    write_outputs(cfg, results)
    if cfg.out is not None:
        log.info("wrote %d runs to %s", len(results), cfg.out)
    return 0


def generate_text(kind: str, seed: int, cities: int = DEFAULT_CITIES) -> str:
    rng = Random(f"{kind}:{seed}")
    if kind == "cuboid":
        return format_cuboids(cuboid_function_generate(rng))
    return format_matrix(random_tsp_instance(cities, rng))


def cmd_generate(cfg: CliConfig) -> int:
    text = generate_text(cfg.kind, cfg.seed, cfg.cities)
    if cfg.out is None:
        sys.stdout.write(text)
        return 0
    try:
        cfg.out.write_text(text)
    except OSError as exc:
        log.error("cannot write %s: %s", cfg.out, exc)
        return 1
    return 0


def inspect_rows(problem: str, text: str) -> list[tuple[str, object]]:
    if problem == "cuboid":
        spec = parse_cuboids(text)
        return [("boxes", len(spec.lows)), ("true_maximum", spec.true_maximum),
                ("argmax", " ".join(repr(float(v)) for v in spec.argmax_witness))]
    if problem == "tsp":
        inst = load_instance(text)
        layout = "coordinates" if inst.coordinates is not None else "matrix"
        return [("cities", inst.n), ("layout", layout)]
    if problem == "scp":
        inst = parse_orlib(text)
        return [("rows", inst.m), ("columns", inst.n), ("total_cost", inst.costs.sum().item()),
                ("integer_costs", inst.integer_costs)]
    f = parse_dimacs(text)
    return [("variables", f.num_vars), ("clauses", len(f)),
            ("max_clause_length", max((len(c) for c in f.clauses), default=0))]


def cmd_inspect(cfg: CliConfig) -> int:
    rows = inspect_rows(cfg.problem, cfg.instance.read_text())
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["field", "value"])
    w.writerows(rows)
    return 0


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.INFO, format="%(levelname)s %(message)s")
    try:
        cfg = parse_args(argv)
        handler = {"run": cmd_run, "generate": cmd_generate, "inspect": cmd_inspect}[cfg.subcommand]
        return handler(cfg)
    except ParseError as exc:
        log.error("invalid instance file: %s", exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
