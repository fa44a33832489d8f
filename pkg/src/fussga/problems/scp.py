"""Set covering: OR-Library parsing, greedy repair, and operators.

A cover genome is a ``frozenset`` of selected 0-based column indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

import numpy as np

from ..errors import ParseError
from .base import Problem

# per-extra-bit continuation probability: 1 + Geometric(1/3) bits, mean 3
_EXTRA_BIT = 2 / 3


@dataclass(eq=False)
class ScpInstance:
    costs: np.ndarray
    row_cols: list[list[int]]

    def __post_init__(self):
        self.costs = np.asarray(self.costs)
        n = len(self.costs)
        if np.any(self.costs <= 0):
            raise ValueError("column costs must be positive")
        col_rows: list[list[int]] = [[] for _ in range(n)]
        for i, cols in enumerate(self.row_cols):
            if not cols:
                raise ValueError(f"row {i} cannot be covered")
            for j in cols:
                if not 0 <= j < n:
                    raise ValueError(f"column {j} out of range")
                col_rows[j].append(i)
        self.col_rows = [np.array(r, dtype=np.intp) for r in col_rows]
        self.integer_costs = bool(np.all(self.costs == np.round(self.costs)))
        self._cost_list = self.costs.tolist()

    @property
    def m(self) -> int:
        return len(self.row_cols)

    @property
    def n(self) -> int:
        return len(self.costs)

    @classmethod
    def from_matrix(cls, matrix, costs) -> ScpInstance:
        matrix = np.asarray(matrix, dtype=bool)
        return cls(np.asarray(costs), [np.flatnonzero(row).tolist() for row in matrix])

    def coverage(self, g) -> np.ndarray:
        """Number of selected columns covering each row."""
        cover = np.zeros(self.m, dtype=np.intp)
        for j in g:
            cover[self.col_rows[j]] += 1
        return cover

    def is_feasible(self, g) -> bool:
        return bool(np.all(self.coverage(g) > 0))


def scp_cost(g, inst: ScpInstance) -> float:
    if not inst.is_feasible(g):
        raise ValueError("genome does not cover every row; repair it first")
    cost = sum(inst._cost_list[j] for j in g)
    return int(round(cost)) if inst.integer_costs else cost


def repair(g, inst: ScpInstance) -> frozenset[int]:
    """Greedy completion followed by redundant-column removal.

    Uncovered rows are visited in order; each gets the covering column with
    the lowest cost per newly covered row (lowest index on ties). Then
    columns are dropped, most expensive first, while every row they cover
    stays covered by something else.
    """
    sel = set(g)
    cover = inst.coverage(sel)
    costs = inst._cost_list
    for i in range(inst.m):
        if cover[i]:
            continue
        best, best_ratio = -1, np.inf
        for j in inst.row_cols[i]:
            ratio = costs[j] / np.count_nonzero(cover[inst.col_rows[j]] == 0)
            if ratio < best_ratio:
                best, best_ratio = j, ratio
        sel.add(best)
        cover[inst.col_rows[best]] += 1
    for j in sorted(sel, key=lambda j: (-costs[j], j)):
        rows = inst.col_rows[j]
        if np.all(cover[rows] >= 2):
            sel.discard(j)
            cover[rows] -= 1
    return frozenset(sel)


def scp_mutate(g, inst: ScpInstance, rng: Random) -> frozenset[int]:
    k = 1
    while rng.random() < _EXTRA_BIT:
        k += 1
    k = min(k, inst.n)
    flips = set(rng.sample(range(inst.n), k))
    return repair(frozenset(g) ^ flips, inst)


def scp_crossover(p, q, inst: ScpInstance, rng: Random) -> frozenset[int]:
    """Uniform fusion: each column's bit from a uniformly chosen parent."""
    child = set(p & q)
    for j in sorted(p ^ q):
        if rng.random() < 0.5:
            child.add(j)
    return repair(child, inst)


def _tokens(text: str):
    for no, line in enumerate(text.splitlines(), 1):
        for tok in line.split():
            yield no, tok


def parse_orlib(text: str) -> ScpInstance:
    """Parse the OR-Library set covering layout.

    ``m n``, then ``n`` column costs, then per row a count ``k`` followed by
    ``k`` 1-based column indices. Tokens may wrap across lines freely.
    """
    tokens = _tokens(text)
    last_line = max(1, len(text.splitlines()))

    def take(what: str) -> tuple[int, str]:
        try:
            return next(tokens)
        except StopIteration:
            raise ParseError(f"truncated file: expected {what}", last_line) from None

    def take_int(what: str) -> tuple[int, int]:
        no, tok = take(what)
        try:
            return no, int(tok)
        except ValueError:
            raise ParseError(f"expected integer {what}, got {tok!r}", no) from None

    no, m = take_int("row count")
    no, n = take_int("column count")
    if m < 1 or n < 1:
        raise ParseError("row and column counts must be positive", no)
    costs = []
    for j in range(n):
        no, tok = take(f"cost of column {j + 1}")
        try:
            c = float(tok)
        except ValueError:
            raise ParseError(f"non-numeric cost {tok!r}", no) from None
        if not c > 0 or not np.isfinite(c):
            raise ParseError(f"cost of column {j + 1} must be positive", no)
        costs.append(c)
    row_cols = []
    for i in range(m):
        no, k = take_int(f"column count of row {i + 1}")
        if k < 1:
            raise ParseError(f"row {i + 1} has no covering columns", no)
        cols = []
        for _ in range(k):
            no, j = take_int(f"column index in row {i + 1}")
            if not 1 <= j <= n:
                raise ParseError(f"column index {j} out of range 1..{n}", no)
            if j - 1 in cols:
                raise ParseError(f"column {j} listed twice in row {i + 1}", no)
            cols.append(j - 1)
        row_cols.append(cols)
    for no, tok in tokens:
        raise ParseError(f"unexpected trailing data {tok!r}", no)
    arr = np.array(costs)
    if np.all(arr == np.round(arr)):
        arr = arr.astype(np.int64)
    return ScpInstance(arr, row_cols)


def format_orlib(inst: ScpInstance, per_line: int = 12) -> str:
    def chunks(values):
        values = list(values)
        return [" ".join(values[i:i + per_line]) for i in range(0, len(values), per_line)]

    fmt = (lambda c: str(int(c))) if inst.integer_costs else (lambda c: repr(float(c)))
    lines = [f"{inst.m} {inst.n}"]
    lines += chunks(fmt(c) for c in inst.costs)
    for cols in inst.row_cols:
        lines.append(str(len(cols)))
        lines += chunks(str(j + 1) for j in cols)
    return "\n".join(lines) + "\n"


class SetCover(Problem):
    name = "scp"
    minimize = True

    def __init__(self, inst: ScpInstance):
        self.inst = inst
        self.integer_fitness = inst.integer_costs

    def random_genome(self, rng):
        # one random covering column per row, then prune
        picks = {cols[int(rng.random() * len(cols))] for cols in self.inst.row_cols}
        return repair(picks, self.inst)

    def fitness(self, genome):
        return -scp_cost(genome, self.inst)

    def mutate(self, genome, rng):
        return scp_mutate(genome, self.inst, rng)

    def crossover(self, a, b, rng):
        return scp_crossover(a, b, self.inst, rng)
