"""Deceptive two-strip problem on the unit square and random cuboid-sum
functions on the unit 4-cube.

Genomes are plain tuples of floats in [0, 1].
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

import numpy as np

from ..errors import ParseError
from .base import Problem

CUBOIDS = 16
DIMS = 4
MIN_WIDTH = 0.2


@dataclass(frozen=True)
class Deceptive2dSpec:
    a: float = 0.45
    b: float = 0.45
    delta: float = 0.1

    def __post_init__(self):
        if not 0 < self.delta <= 1:
            raise ValueError("delta must be in (0, 1]")
        if not (0 <= self.a and self.a + self.delta <= 1 and 0 <= self.b and self.b + self.delta <= 1):
            raise ValueError("strips must lie inside the unit square")


def deceptive2d_fitness(p: tuple[float, float], spec: Deceptive2dSpec) -> int:
    x, y = p
    in_x = spec.a <= x <= spec.a + spec.delta
    in_y = spec.b <= y <= spec.b + spec.delta
    if in_x and in_y:
        return 4
    if in_x:
        return 1
    if in_y:
        return 2
    return 3


def deceptive2d_mutate(p: tuple[float, float], rng: Random) -> tuple[float, float]:
    if rng.random() < 0.5:
        return (rng.random(), p[1])
    return (p[0], rng.random())


def deceptive2d_crossover(p: tuple[float, float], q: tuple[float, float]) -> tuple[float, float]:
    return (p[0], q[1])


class Deceptive2d(Problem):
    name = "deceptive2d"
    integer_fitness = True

    def __init__(self, spec: Deceptive2dSpec | None = None):
        self.spec = spec or Deceptive2dSpec()

    def random_genome(self, rng):
        return (rng.random(), rng.random())

    def fitness(self, genome):
        return deceptive2d_fitness(genome, self.spec)

    def mutate(self, genome, rng):
        return deceptive2d_mutate(genome, rng)

    def crossover(self, a, b, rng):
        return deceptive2d_crossover(a, b)

    @property
    def optimum(self):
        return 4


@dataclass(frozen=True, eq=False)
class CuboidFunctionSpec:
    """Sixteen closed boxes; ``lows``/``highs`` have shape (16, 4)."""

    lows: np.ndarray
    highs: np.ndarray
    true_maximum: int
    argmax_witness: tuple[float, ...]

    @classmethod
    def from_boxes(cls, lows, highs) -> CuboidFunctionSpec:
        lows = np.asarray(lows, dtype=float)
        highs = np.asarray(highs, dtype=float)
        if lows.shape != highs.shape or lows.ndim != 2 or lows.shape[1] != DIMS:
            raise ValueError("boxes must be given as (k, 4) arrays")
        if np.any(lows > highs) or np.any(lows < 0) or np.any(highs > 1):
            raise ValueError("boxes must be non-empty and inside [0, 1]^4")
        best, witness = cuboid_maximum(lows, highs)
        return cls(lows, highs, best, witness)

    def check(self) -> None:
        """Raise ``ValueError`` unless this is a well-formed random function."""
        widths = self.highs - self.lows
        if self.lows.shape != (CUBOIDS, DIMS):
            raise ValueError(f"expected {CUBOIDS} cuboids")
        if np.any(widths < MIN_WIDTH - 1e-12) or np.any(widths > 1):
            raise ValueError("cuboid widths must lie in [0.2, 1]")
        if cuboid_fitness(self.argmax_witness, self) != self.true_maximum:
            raise ValueError("witness does not attain the stated maximum")


def cuboid_maximum(lows: np.ndarray, highs: np.ndarray) -> tuple[int, tuple[float, ...]]:
    """Exact maximum of the sum of closed-box indicators, with a witness.

    A non-empty intersection of closed boxes is itself a box whose lower
    corner takes each coordinate from some box's lower edge, so it suffices
    to evaluate every combination of lower edges (at most 16^4 points).
    """
    axes = [np.unique(lows[:, d]) for d in range(lows.shape[1])]
    # inside[d][b, i]: box b covers candidate i along axis d
    inside = [
        ((lows[:, [d]] <= axes[d][None, :]) & (axes[d][None, :] <= highs[:, [d]])).astype(np.int32)
        for d in range(lows.shape[1])
    ]
    counts = np.einsum("bi,bj,bk,bl->ijkl", *inside)
    idx = np.unravel_index(int(np.argmax(counts)), counts.shape)
    witness = tuple(float(axes[d][i]) for d, i in enumerate(idx))
    return int(counts[idx]), witness


def cuboid_function_generate(rng: Random) -> CuboidFunctionSpec:
    lows = np.empty((CUBOIDS, DIMS))
    highs = np.empty((CUBOIDS, DIMS))
    for b in range(CUBOIDS):
        for d in range(DIMS):
            width = MIN_WIDTH + (1 - MIN_WIDTH) * rng.random()
            lo = (1 - width) * rng.random()
            lows[b, d] = lo
            highs[b, d] = min(1.0, lo + width)
    return CuboidFunctionSpec.from_boxes(lows, highs)


def cuboid_fitness(p, spec: CuboidFunctionSpec) -> int:
    p = np.asarray(p, dtype=float)
    return int(np.count_nonzero(np.all((spec.lows <= p) & (p <= spec.highs), axis=1)))


def hypercube_mutate(p: tuple[float, ...], rng: Random) -> tuple[float, ...]:
    d = int(rng.random() * len(p))
    q = list(p)
    q[d] = rng.random()
    return tuple(q)


def hypercube_crossover(p: tuple[float, ...], q: tuple[float, ...], rng: Random) -> tuple[float, ...]:
    return tuple(x if rng.random() < 0.5 else y for x, y in zip(p, q))


def format_cuboids(spec: CuboidFunctionSpec) -> str:
    """One box per line: lo hi pairs for each of the four axes."""
    lines = []
    for lo, hi in zip(spec.lows, spec.highs):
        lines.append(" ".join(f"{float(l)!r} {float(h)!r}" for l, h in zip(lo, hi)))
    return "\n".join(lines) + "\n"


def parse_cuboids(text: str) -> CuboidFunctionSpec:
    lows, highs = [], []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 * DIMS:
            raise ParseError(f"expected {2 * DIMS} numbers, got {len(parts)}", lineno)
        try:
            vals = [float(v) for v in parts]
        except ValueError:
            raise ParseError("non-numeric interval bound", lineno) from None
        lo, hi = vals[0::2], vals[1::2]
        if any(l > h or l < 0 or h > 1 for l, h in zip(lo, hi)):
            raise ParseError("interval must satisfy 0 <= lo <= hi <= 1", lineno)
        lows.append(lo)
        highs.append(hi)
    if not lows:
        raise ParseError("no cuboids found")
    return CuboidFunctionSpec.from_boxes(lows, highs)


class CuboidFunction(Problem):
    name = "cuboid"
    integer_fitness = True

    def __init__(self, spec: CuboidFunctionSpec):
        self.spec = spec
        # flattened bounds: the scalar loop beats numpy for one 4-d point
        self._boxes = [
            tuple(v for pair in zip(lo, hi) for v in pair)
            for lo, hi in zip(spec.lows.tolist(), spec.highs.tolist())
        ]

    def random_genome(self, rng):
        return tuple(rng.random() for _ in range(DIMS))

    def fitness(self, genome):
        x0, x1, x2, x3 = genome
        n = 0
        for l0, h0, l1, h1, l2, h2, l3, h3 in self._boxes:
            if l0 <= x0 <= h0 and l1 <= x1 <= h1 and l2 <= x2 <= h2 and l3 <= x3 <= h3:
                n += 1
        return n

    def mutate(self, genome, rng):
        return hypercube_mutate(genome, rng)

    def crossover(self, a, b, rng):
        return hypercube_crossover(a, b, rng)

    @property
    def optimum(self):
        return self.spec.true_maximum
