"""Steady-state GA loop.

One iteration selects a parent, optionally crosses it with a second
independently selected parent, mutates, inserts the child, and once the
population is at its cap deletes a uniformly random member.

All randomness for a run comes from a single ``random.Random`` seeded with
``GaParams.rng_seed``. Per iteration the draws happen in this order:
parent A selection, crossover coin, [parent B selection, crossover
operator, mutate coin], mutation operator (if applied), deletion slot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from random import Random
from typing import Any, Callable

from .errors import InitializationError
from .population import Individual, Population
from .problems.base import Problem
from .selection import SelectionScheme, select


@dataclass(frozen=True)
class GaParams:
    max_population: int = 1000
    initial_population: int | None = None
    crossover_probability: float = 0.5
    mutate_probability: float = 0.5
    iteration_budget: int = 100_000
    rng_seed: int = 0

    def __post_init__(self):
        if self.initial_population is None:
            object.__setattr__(self, "initial_population", self.max_population)
        if self.max_population < 1:
            raise ValueError("max_population must be positive")
        if not 1 <= self.initial_population <= self.max_population:
            raise ValueError("initial_population must be in [1, max_population]")
        for name in ("crossover_probability", "mutate_probability"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")
        if self.iteration_budget < 0:
            raise ValueError("iteration_budget must be non-negative")


@dataclass
class StepOutcome:
    child: Individual
    crossed: bool
    mutated: bool
    deleted_index: int | None


@dataclass
class RunRecord:
    scheme: str
    seed: int
    max_population: int
    minimize: bool = False
    # (iteration, best-ever fitness) in engine (maximising) orientation
    trace: list[tuple[int, float]] = field(default_factory=list)
    snapshots: list[Any] = field(default_factory=list)
    target: float | None = None
    target_iteration: int | None = None
    iterations: int = 0

    @property
    def target_reached(self) -> bool:
        return self.target_iteration is not None

    @property
    def generations(self) -> float:
        return self.iterations / self.max_population

    @property
    def target_generations(self) -> float | None:
        if self.target_iteration is None:
            return None
        return self.target_iteration / self.max_population

    @property
    def best_ever(self) -> float:
        return self.trace[-1][1]

    def display(self, fitness: float) -> float:
        return -fitness if self.minimize else fitness

    def best_at(self, iteration: int) -> float:
        """Best-ever fitness at the last trace point not after ``iteration``."""
        best = self.trace[0][1]
        for it, value in self.trace:
            if it > iteration:
                break
            best = value
        return best


def initialize_population(problem: Problem, params: GaParams, rng: Random) -> Population:
    pop = Population()
    try:
        for _ in range(params.initial_population):
            genome = problem.random_genome(rng)
            pop.add(Individual(genome, problem.fitness(genome)))
    except Exception as exc:
        raise InitializationError(f"could not build initial population for {problem.name}") from exc
    return pop


def step(
    pop: Population,
    problem: Problem,
    scheme: SelectionScheme,
    params: GaParams,
    rng: Random,
) -> StepOutcome:
    parent = pop.members[select(pop, scheme, rng)]
    if rng.random() < params.crossover_probability:
        other = pop.members[select(pop, scheme, rng)]
        genome = problem.crossover(parent.genome, other.genome, rng)
        crossed = True
        mutated = rng.random() < params.mutate_probability
    else:
        # never insert a plain clone
        genome = parent.genome
        crossed = False
        mutated = True
    if mutated:
        genome = problem.mutate(genome, rng)
    child = Individual(genome, problem.fitness(genome))
    pop.add(child)
    deleted = None
    if len(pop) > params.max_population:
        deleted = int(rng.random() * len(pop))
        pop.remove(deleted)
    return StepOutcome(child, crossed, mutated, deleted)


def _reached(best: float, target: float) -> bool:
    return best >= target - 1e-9 * max(1.0, abs(target))


def check_scheme(problem: Problem, scheme: SelectionScheme) -> None:
    if scheme.needs_integer_fitness and not problem.integer_fitness:
        raise ValueError(
            f"{scheme.label} needs integer fitness; {problem.name} is real-valued, use 'fuss'"
        )


def run(
    problem: Problem,
    scheme: SelectionScheme,
    params: GaParams,
    target: float | None = None,
    stride: int | None = None,
    observer: Callable[[int, Population], Any] | None = None,
    observe_every: int | None = None,
) -> RunRecord:
    """Run until the iteration budget is spent or ``target`` is reached.

    ``target`` is in engine orientation (use ``problem.to_engine`` for costs).
    The trace records best-ever fitness at iteration 0, every ``stride``
    iterations (default ``max_population // 10``), and at the final
    iteration. ``observer(iteration, pop)`` is called at iteration 0 and
    every ``observe_every`` iterations; non-None results are kept in
    ``snapshots``.
    """
    check_scheme(problem, scheme)
    stride = stride or max(1, params.max_population // 10)
    rng = Random(params.rng_seed)
    pop = initialize_population(problem, params, rng)
    record = RunRecord(scheme.label, params.rng_seed, params.max_population,
                       minimize=problem.minimize, target=target)

    best = pop.f_max
    record.trace.append((0, best))
    if target is not None and _reached(best, target):
        record.target_iteration = 0

    def observe(it: int) -> None:
        if observer is not None:
            snap = observer(it, pop)
            if snap is not None:
                record.snapshots.append(snap)

    observe(0)
    it = 0
    while record.target_iteration is None and it < params.iteration_budget:
        out = step(pop, problem, scheme, params, rng)
        it += 1
        if out.child.fitness > best:
            best = out.child.fitness
            if target is not None and _reached(best, target):
                record.target_iteration = it
        if it % stride == 0 or record.target_iteration is not None:
            record.trace.append((it, best))
        if observe_every and it % observe_every == 0:
            observe(it)
    if record.trace[-1][0] != it:
        record.trace.append((it, best))
    record.iterations = it
    return record


def generations(iterations: int, max_population: int) -> float:
    return iterations / max_population
