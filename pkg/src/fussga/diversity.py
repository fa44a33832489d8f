"""Hamming diversity of boolean-genome populations and fitness histograms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from random import Random

import numpy as np

from .population import Population

DEFAULT_SAMPLE_CAP = 200
REAL_BINS = 50


@dataclass
class DiversitySnapshot:
    iteration: int
    whole_population_diversity: float | None
    top_fraction_diversity: float | None
    fraction: float
    fitness_histogram: dict[float, int]


def hamming_distance(a, b) -> int:
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


def mean_pairwise_diversity(genomes, sample_cap: int = DEFAULT_SAMPLE_CAP,
                            rng: Random | None = None) -> float | None:
    """Mean Hamming distance over all unordered pairs, divided by genome length.

    Populations larger than ``sample_cap`` are first subsampled uniformly
    without replacement. Returns None when fewer than two genomes remain.
    """
    genomes = list(genomes)
    if len(genomes) > sample_cap:
        genomes = (rng or Random(0)).sample(genomes, sample_cap)
    k = len(genomes)
    if k < 2:
        return None
    x = np.asarray(genomes, dtype=bool)
    length = x.shape[1]
    if length == 0:
        return 0.0
    ones = np.count_nonzero(x, axis=0).astype(np.int64)
    # a column with c ones separates c * (k - c) of the pairs
    differing = int(np.sum(ones * (k - ones)))
    return differing / (k * (k - 1) / 2 * length)


def top_members(pop: Population, fraction: float) -> list:
    if not 0 < fraction <= 1:
        raise ValueError("fraction must be in (0, 1]")
    count = math.ceil(fraction * len(pop))
    ranked = sorted(pop.members, key=lambda ind: ind.fitness, reverse=True)
    return ranked[:count]


def top_fraction_diversity(pop: Population, fraction: float,
                           sample_cap: int = DEFAULT_SAMPLE_CAP,
                           rng: Random | None = None) -> float | None:
    top = top_members(pop, fraction)
    return mean_pairwise_diversity([ind.genome for ind in top], sample_cap, rng)


def fitness_histogram(pop: Population, integer: bool = True) -> dict[float, int]:
    """Counts per fitness level from f_min to f_max, empty levels included.

    With ``integer=False`` values are binned into 50 equal-width bins keyed
    by their lower edge; the top edge falls into the last bin.
    """
    if len(pop) == 0:
        return {}
    if integer:
        return dict(pop.level_table().levels)
    lo, hi = pop.f_min, pop.f_max
    if hi == lo:
        return {lo: len(pop)}
    width = (hi - lo) / REAL_BINS
    counts = [0] * REAL_BINS
    for f in pop.fitness_values():
        counts[min(int((f - lo) / width), REAL_BINS - 1)] += 1
    return {lo + i * width: c for i, c in enumerate(counts)}


class DiversityObserver:
    """Engine observer producing a :class:`DiversitySnapshot` per call.

    Subsampling draws from its own generator so that turning snapshots on
    does not change the run itself.
    """

    def __init__(self, fraction: float = 0.1, sample_cap: int = DEFAULT_SAMPLE_CAP,
                 seed: int = 0, integer: bool = True, genomes_are_bits: bool = True):
        self.fraction = fraction
        self.sample_cap = sample_cap
        self.rng = Random(seed)
        self.integer = integer
        self.genomes_are_bits = genomes_are_bits

    def __call__(self, iteration: int, pop: Population) -> DiversitySnapshot:
        whole = top = None
        if self.genomes_are_bits:
            whole = mean_pairwise_diversity([m.genome for m in pop.members], self.sample_cap, self.rng)
            top = top_fraction_diversity(pop, self.fraction, self.sample_cap, self.rng)
        return DiversitySnapshot(iteration, whole, top, self.fraction,
                                 fitness_histogram(pop, self.integer))
