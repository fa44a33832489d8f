"""Population container with an index over fitness values.

Members live in a flat list of slots. Deletion swaps the last slot into the
hole, so slot numbers are only stable until the next removal.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Any, Iterator


@dataclass(slots=True)
class Individual:
    genome: Any
    fitness: float


@dataclass
class FitnessLevelTable:
    """Occupancy of integer fitness levels, empty levels included."""

    levels: dict[int, int]
    f_min: int
    f_max: int

    @property
    def size(self) -> int:
        return sum(self.levels.values())


class Population:
    def __init__(self, members=()):
        self.members: list[Individual] = []
        # fitness per slot, kept in step with members for fast scans
        self.fitness: list[float] = []
        self._buckets: dict[float, list[int]] = {}
        self._where: list[int] = []
        self._keys: list[float] = []
        for ind in members:
            self.add(ind)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Individual]:
        return iter(self.members)

    def __getitem__(self, slot: int) -> Individual:
        return self.members[slot]

    def add(self, ind: Individual) -> int:
        slot = len(self.members)
        self.members.append(ind)
        self.fitness.append(ind.fitness)
        bucket = self._buckets.get(ind.fitness)
        if bucket is None:
            bucket = self._buckets[ind.fitness] = []
            bisect.insort(self._keys, ind.fitness)
        self._where.append(len(bucket))
        bucket.append(slot)
        return slot

    def remove(self, slot: int) -> Individual:
        """Remove the member at ``slot``; the last member takes its place."""
        members = self.members
        ind = members[slot]
        self._unlink(slot, ind.fitness)
        last = len(members) - 1
        if slot != last:
            moved = members[last]
            members[slot] = moved
            self.fitness[slot] = moved.fitness
            pos = self._where[last]
            self._buckets[moved.fitness][pos] = slot
            self._where[slot] = pos
        members.pop()
        self.fitness.pop()
        self._where.pop()
        return ind

    def _unlink(self, slot: int, value: float) -> None:
        bucket = self._buckets[value]
        pos = self._where[slot]
        tail = bucket.pop()
        if tail != slot:
            bucket[pos] = tail
            self._where[tail] = pos
        if not bucket:
            del self._buckets[value]
            del self._keys[bisect.bisect_left(self._keys, value)]

    @property
    def f_min(self) -> float:
        return self._keys[0]

    @property
    def f_max(self) -> float:
        return self._keys[-1]

    def best(self) -> Individual:
        return self.members[self._buckets[self._keys[-1]][0]]

    def distinct_fitness(self) -> list[float]:
        """Sorted distinct fitness values currently present."""
        return list(self._keys)

    def slots_with(self, value: float) -> list[int]:
        """Slots of members whose fitness equals ``value`` exactly (live view)."""
        return self._buckets.get(value, [])

    def count(self, value: float) -> int:
        return len(self._buckets.get(value, ()))

    def nearest(self, value: float) -> list[float]:
        """Fitness value(s) present in the population nearest to ``value``.

        Returns one value, or two when the neighbours below and above are
        equidistant.
        """
        keys = self._keys
        i = bisect.bisect_left(keys, value)
        if i < len(keys) and keys[i] == value:
            return [value]
        if i == 0:
            return [keys[0]]
        if i == len(keys):
            return [keys[-1]]
        below, above = keys[i - 1], keys[i]
        d_below, d_above = value - below, above - value
        if d_below < d_above:
            return [below]
        if d_above < d_below:
            return [above]
        return [below, above]

    def nearest_slots(self, value: float) -> list[int]:
        """Slots of the members whose fitness is nearest ``value``, ties pooled."""
        keys = self._keys
        i = bisect.bisect_left(keys, value)
        if i == len(keys):
            return self._buckets[keys[-1]]
        above = keys[i]
        if i == 0 or above == value:
            return self._buckets[above]
        below = keys[i - 1]
        d_below, d_above = value - below, above - value
        if d_below < d_above:
            return self._buckets[below]
        if d_above < d_below:
            return self._buckets[above]
        return self._buckets[below] + self._buckets[above]

    def level_table(self) -> FitnessLevelTable:
        lo, hi = int(self.f_min), int(self.f_max)
        levels = {lv: self.count(lv) for lv in range(lo, hi + 1)}
        return FitnessLevelTable(levels, lo, hi)

    def fitness_values(self) -> list[float]:
        return list(self.fitness)
