"""Selection schemes: fitness uniform (real and integer), tournament, random.

Every selector returns a member *slot* of the population rather than the
member itself, so callers can count or delete. ``selection_probabilities``
gives the exact distribution each selector samples from.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from random import Random
from typing import Callable

import numpy as np

from .population import Population

FUSS_REAL = "fuss"
FUSS_INTEGER = "fussint"
TOURNAMENT = "tour"
RANDOM = "rand"


@dataclass(frozen=True)
class SelectionScheme:
    kind: str
    size: int = 1

    def __post_init__(self):
        if self.kind not in (FUSS_REAL, FUSS_INTEGER, TOURNAMENT, RANDOM):
            raise ValueError(f"unknown selection scheme {self.kind!r}")
        if self.kind == TOURNAMENT and self.size < 1:
            raise ValueError("tournament size must be >= 1")

    @classmethod
    def fuss(cls) -> SelectionScheme:
        return cls(FUSS_REAL)

    @classmethod
    def fuss_integer(cls) -> SelectionScheme:
        return cls(FUSS_INTEGER)

    @classmethod
    def tournament(cls, size: int) -> SelectionScheme:
        return cls(TOURNAMENT, size)

    @classmethod
    def random(cls) -> SelectionScheme:
        return cls(RANDOM)

    @classmethod
    def parse(cls, label: str) -> SelectionScheme:
        """Parse ``fuss``, ``fussint``, ``rand`` or ``tourN``."""
        label = label.strip().lower()
        if label == FUSS_REAL:
            return cls.fuss()
        if label == FUSS_INTEGER:
            return cls.fuss_integer()
        if label == RANDOM:
            return cls.random()
        m = re.fullmatch(r"tour(\d+)", label)
        if m and int(m.group(1)) >= 1:
            return cls.tournament(int(m.group(1)))
        raise ValueError(f"unknown selection scheme {label!r}")

    @property
    def label(self) -> str:
        if self.kind == TOURNAMENT:
            return f"tour{self.size}"
        return self.kind

    @property
    def needs_integer_fitness(self) -> bool:
        return self.kind == FUSS_INTEGER

    def __str__(self) -> str:
        return self.label


def fuss_select_real(pop: Population, rng: Random) -> int:
    lo, hi = pop.f_min, pop.f_max
    target = lo + (hi - lo) * rng.random() if hi > lo else lo
    # an equidistant target pools both neighbouring values' members
    slots = pop.nearest_slots(target)
    return slots[int(rng.random() * len(slots))]


def fuss_select_integer(pop: Population, rng: Random) -> int:
    lo, hi = int(pop.f_min), int(pop.f_max)
    level = lo + int(rng.random() * (hi - lo + 1))
    slots = pop.slots_with(level)
    if not slots:
        levels = pop.nearest(level)
        pick = levels[0] if len(levels) == 1 else levels[rng.random() < 0.5]
        slots = pop.slots_with(pick)
    return slots[int(rng.random() * len(slots))]


def tournament_select(pop: Population, size: int, rng: Random) -> int:
    return _tournament(size, pop, rng)


def _tournament(size: int, pop: Population, rng: Random) -> int:
    fit = pop.fitness
    n = len(fit)
    rnd = rng.random
    winner = int(rnd() * n)
    best = fit[winner]
    ties = None
    for _ in range(size - 1):
        slot = int(rnd() * n)
        f = fit[slot]
        if f > best:
            best, winner, ties = f, slot, None
        elif f == best:
            if ties is None:
                ties = [winner]
            ties.append(slot)
    if ties is None:
        return winner
    return ties[int(rnd() * len(ties))]


def random_select(pop: Population, rng: Random) -> int:
    return int(rng.random() * len(pop))


def select(pop: Population, scheme: SelectionScheme, rng: Random) -> int:
    kind = scheme.kind
    if kind == FUSS_REAL:
        return fuss_select_real(pop, rng)
    if kind == FUSS_INTEGER:
        return fuss_select_integer(pop, rng)
    if kind == TOURNAMENT:
        return _tournament(scheme.size, pop, rng)
    return random_select(pop, rng)


def selector(scheme: SelectionScheme) -> Callable[[Population, Random], int]:
    """The draw function for ``scheme``, for callers drawing many times in a row."""
    kind = scheme.kind
    if kind == FUSS_REAL:
        return fuss_select_real
    if kind == FUSS_INTEGER:
        return fuss_select_integer
    if kind == TOURNAMENT:
        return functools.partial(_tournament, scheme.size)
    return random_select


def selection_probabilities(pop: Population, scheme: SelectionScheme) -> np.ndarray:
    """Exact probability of each slot being selected, as an array by slot."""
    n = len(pop)
    if n == 0:
        raise ValueError("empty population")
    kind = scheme.kind
    if kind == RANDOM:
        return np.full(n, 1.0 / n)
    fitness = np.array(pop.fitness_values(), dtype=float)
    values, inverse, counts = np.unique(fitness, return_inverse=True, return_counts=True)
    if kind == TOURNAMENT:
        above = np.cumsum(counts) / n
        below = above - counts / n
        level_p = above**scheme.size - below**scheme.size
    elif kind == FUSS_REAL:
        level_p = _midpoint_partition(values)
    else:
        level_p = _integer_level_probabilities(pop, values)
    return level_p[inverse] / counts[inverse]


def _midpoint_partition(values: np.ndarray) -> np.ndarray:
    if len(values) == 1:
        return np.ones(1)
    mids = (values[1:] + values[:-1]) / 2
    edges = np.concatenate(([values[0]], mids, [values[-1]]))
    return np.diff(edges) / (values[-1] - values[0])


def _integer_level_probabilities(pop: Population, values: np.ndarray) -> np.ndarray:
    lo, hi = int(pop.f_min), int(pop.f_max)
    share = 1.0 / (hi - lo + 1)
    mass = dict.fromkeys(values.tolist(), 0.0)
    for level in range(lo, hi + 1):
        targets = pop.nearest(level)
        for value in targets:
            mass[value] += share / len(targets)
    return np.array([mass[v] for v in values.tolist()])
