from __future__ import annotations

from random import Random
from typing import Any


class Problem:
    """Fitness function plus variation operators for one search space.

    The engine always maximises. Minimisation problems return the negated
    cost from :meth:`fitness` and set ``minimize`` so reports can undo it.
    Operators must return new genomes and never modify their arguments.
    """

    name = "problem"
    minimize = False
    # integer-valued fitness is what lets the level-based FUSS variant apply
    integer_fitness = False

    def random_genome(self, rng: Random) -> Any:
        raise NotImplementedError

    def fitness(self, genome: Any) -> float:
        raise NotImplementedError

    def mutate(self, genome: Any, rng: Random) -> Any:
        raise NotImplementedError

    def crossover(self, a: Any, b: Any, rng: Random) -> Any:
        raise NotImplementedError

    @property
    def optimum(self) -> float | None:
        """Best achievable engine fitness, when known."""
        return None

    def display(self, fitness: float) -> float:
        return -fitness if self.minimize else fitness

    def to_engine(self, value: float) -> float:
        return -value if self.minimize else value
