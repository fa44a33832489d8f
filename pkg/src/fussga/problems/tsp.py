"""Symmetric TSP: random distance matrices and Euclidean city coordinates.

Tours are tuples holding a permutation of ``range(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

import numpy as np

from ..errors import ParseError
from .base import Problem


@dataclass(eq=False)
class TspInstance:
    distances: np.ndarray
    coordinates: np.ndarray | None = None

    def __post_init__(self):
        d = self.distances
        if d.ndim != 2 or d.shape[0] != d.shape[1] or d.shape[0] < 2:
            raise ValueError("need a square distance matrix with at least 2 cities")
        if not np.allclose(d, d.T) or np.any(np.diag(d) != 0) or np.any(d < 0):
            raise ValueError("distances must be symmetric, non-negative, zero on the diagonal")
        self._rows = d.tolist()

    @property
    def n(self) -> int:
        return self.distances.shape[0]

    @property
    def source(self) -> str:
        return "random" if self.coordinates is None else "coordinates"

    @classmethod
    def from_coordinates(cls, points) -> TspInstance:
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("coordinates must be an (n, 2) array")
        diff = pts[:, None, :] - pts[None, :, :]
        return cls(np.sqrt((diff**2).sum(axis=-1)), pts)


def tour_length(t, inst: TspInstance) -> float:
    rows = inst._rows
    total = rows[t[-1]][t[0]]
    prev = t[0]
    for city in t[1:]:
        total += rows[prev][city]
        prev = city
    return total


def is_permutation(t, n: int) -> bool:
    return len(t) == n and sorted(t) == list(range(n))


def swap_mutate(t, rng: Random) -> tuple[int, ...]:
    n = len(t)
    if n < 2:
        raise ValueError("swap mutation needs at least 2 cities")
    i = int(rng.random() * n)
    j = int(rng.random() * (n - 1))
    if j >= i:
        j += 1
    child = list(t)
    child[i], child[j] = child[j], child[i]
    return tuple(child)


def pmx_crossover(p, q, rng: Random | None = None, cuts: tuple[int, int] | None = None) -> tuple[int, ...]:
    """Partially mapped crossover.

    Positions ``cuts[0]:cuts[1]`` are copied from ``p``; every other
    position takes ``q``'s city, following the segment mapping p[k] -> q[k]
    until it lands on a city not already in the segment. Cuts are drawn
    uniformly from ``0..n`` when not given and may coincide.
    """
    n = len(p)
    if len(q) != n:
        raise ValueError("parents must have the same length")
    if cuts is None:
        a, b = int(rng.random() * (n + 1)), int(rng.random() * (n + 1))
        lo, hi = (a, b) if a <= b else (b, a)
    else:
        lo, hi = cuts
        if not 0 <= lo <= hi <= n:
            raise ValueError(f"bad cut points {cuts}")
    child = list(q)
    segment = set(p[lo:hi])
    pos_in_p = {p[k]: k for k in range(lo, hi)}
    for k in range(n):
        if lo <= k < hi:
            child[k] = p[k]
            continue
        city = q[k]
        while city in segment:
            city = q[pos_in_p[city]]
        child[k] = city
    return tuple(child)


def random_tsp_instance(n: int, rng: Random) -> TspInstance:
    if n < 2:
        raise ValueError("need at least 2 cities")
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            d[i, j] = d[j, i] = rng.random()
    return TspInstance(d)


def format_matrix(inst: TspInstance) -> str:
    """``n`` on the first line, then row i of the upper triangle per line."""
    d = inst.distances
    lines = [str(inst.n)]
    for i in range(inst.n - 1):
        lines.append(" ".join(repr(float(v)) for v in d[i, i + 1:]))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> TspInstance:
    lines = [(no, ln.split()) for no, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise ParseError("empty matrix file", 1)
    no, head = lines[0]
    if len(head) != 1 or not head[0].isdigit():
        raise ParseError("first line must hold the city count", no)
    n = int(head[0])
    if n < 2:
        raise ParseError("need at least 2 cities", no)
    if len(lines) < n:
        raise ParseError(f"truncated: expected {n - 1} triangle rows, found {len(lines) - 1}",
                         lines[-1][0])
    if len(lines) > n:
        raise ParseError("unexpected data after the last triangle row", lines[n][0])
    d = np.zeros((n, n))
    for i, (no, parts) in enumerate(lines[1:]):
        if len(parts) != n - 1 - i:
            raise ParseError(f"row {i} needs {n - 1 - i} entries, got {len(parts)}", no)
        try:
            row = [float(v) for v in parts]
        except ValueError:
            raise ParseError("non-numeric distance", no) from None
        if any(v < 0 or not np.isfinite(v) for v in row):
            raise ParseError("distances must be finite and non-negative", no)
        d[i, i + 1:] = row
        d[i + 1:, i] = row
    return TspInstance(d)


def load_coordinates(text: str) -> TspInstance:
    """Read ``id x y`` lines; lines starting with a letter are headers."""
    points = []
    seen = set()
    for no, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s[0].isalpha():
            continue
        parts = s.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'id x y', got {len(parts)} fields", no)
        try:
            x, y = float(parts[1]), float(parts[2])
        except ValueError:
            raise ParseError("non-numeric coordinate", no) from None
        if not (np.isfinite(x) and np.isfinite(y)):
            raise ParseError("coordinate is not finite", no)
        if parts[0] in seen:
            raise ParseError(f"duplicate city id {parts[0]}", no)
        seen.add(parts[0])
        points.append((x, y))
    if len(points) < 2:
        raise ParseError("need at least 2 cities", max(1, len(text.splitlines())))
    return TspInstance.from_coordinates(points)


def format_coordinates(inst: TspInstance) -> str:
    if inst.coordinates is None:
        raise ValueError("instance has no coordinates")
    return "".join(f"{i} {x!r} {y!r}\n" for i, (x, y) in enumerate(inst.coordinates.tolist(), 1))


def load_instance(text: str) -> TspInstance:
    """Dispatch on layout: a lone integer first line means a matrix file."""
    for line in text.splitlines():
        if line.strip():
            if len(line.split()) == 1 and line.strip().isdigit():
                return parse_matrix(text)
            break
    return load_coordinates(text)


class TravelingSalesman(Problem):
    name = "tsp"
    minimize = True

    def __init__(self, inst: TspInstance):
        self.inst = inst

    def random_genome(self, rng):
        tour = list(range(self.inst.n))
        rng.shuffle(tour)
        return tuple(tour)

    def fitness(self, genome):
        return -tour_length(genome, self.inst)

    def mutate(self, genome, rng):
        return swap_mutate(genome, rng)

    def crossover(self, a, b, rng):
        return pmx_crossover(a, b, rng)
