"""Maximum satisfiability over CNF formulas read from DIMACS files.

Assignments are numpy boolean arrays; index ``v - 1`` holds variable ``v``.
"""

from __future__ import annotations

from random import Random

import numpy as np

from ..errors import ParseError
from .base import Problem


class CnfFormula:
    def __init__(self, num_vars: int, clauses):
        self.num_vars = int(num_vars)
        self.clauses = tuple(tuple(int(l) for l in c) for c in clauses)
        if self.num_vars < 1:
            raise ValueError("need at least one variable")
        for c in self.clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range")
        # pad short clauses by repeating their first literal
        width = max((len(c) for c in self.clauses), default=1)
        padded = [c + (c[0],) * (width - len(c)) for c in self.clauses]
        lits = np.array(padded, dtype=np.int64).reshape(len(padded), width)
        self._vars = np.abs(lits) - 1
        self._neg = lits < 0

    def __len__(self) -> int:
        return len(self.clauses)

    def __eq__(self, other) -> bool:
        return (isinstance(other, CnfFormula) and self.num_vars == other.num_vars
                and self.clauses == other.clauses)

    def __repr__(self) -> str:
        return f"CnfFormula(num_vars={self.num_vars}, clauses={len(self.clauses)})"


def count_satisfied(a: np.ndarray, f: CnfFormula) -> int:
    a = np.asarray(a, dtype=bool)
    if a.shape != (f.num_vars,):
        raise ValueError(f"assignment has {a.shape} entries, formula has {f.num_vars} variables")
    return int(np.count_nonzero((a[f._vars] != f._neg).any(axis=1)))


def random_bits(n: int, rng: Random) -> np.ndarray:
    raw = rng.getrandbits(n).to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), count=n, bitorder="little").astype(bool)


def flip_mutate(a: np.ndarray, rng: Random) -> np.ndarray:
    child = a.copy()
    i = int(rng.random() * len(a))
    child[i] = not child[i]
    return child


def uniform_crossover(p: np.ndarray, q: np.ndarray, rng: Random) -> np.ndarray:
    if p.shape != q.shape:
        raise ValueError("parents differ in length")
    return np.where(random_bits(len(p), rng), p, q)


def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF. A line starting with ``%`` ends the clause data."""
    header = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    current_line = 0
    last_line = 1
    for no, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s[0] == "c":
            continue
        last_line = no
        if s[0] == "%":
            break
        if s[0] == "p":
            parts = s.split()
            if header is not None:
                raise ParseError("second problem line", no)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError("problem line must read 'p cnf <vars> <clauses>'", no)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("non-integer count in problem line", no) from None
            if header[0] < 1 or header[1] < 0:
                raise ParseError("counts in problem line out of range", no)
            continue
        if header is None:
            raise ParseError("clause data before the 'p cnf' problem line", no)
        for tok in s.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"non-integer literal {tok!r}", no) from None
            if lit == 0:
                if not current:
                    raise ParseError("empty clause", no)
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds {header[0]} variables", no)
            if not current:
                current_line = no
            current.append(lit)
    if header is None:
        raise ParseError("missing 'p cnf' problem line", last_line)
    if current:
        raise ParseError("clause not terminated by 0", current_line)
    if len(clauses) != header[1]:
        raise ParseError(f"problem line declares {header[1]} clauses, found {len(clauses)}", last_line)
    return CnfFormula(header[0], clauses)


def format_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def random_3cnf(num_vars: int, num_clauses: int, rng: Random) -> tuple[CnfFormula, np.ndarray]:
    """Random 3-CNF made satisfiable by a hidden assignment, which is returned too.

    Clauses use three distinct variables with random signs; any clause the
    hidden assignment falsifies is redrawn.
    """
    if num_vars < 3:
        raise ValueError("need at least 3 variables")
    hidden = random_bits(num_vars, rng)
    clauses = []
    while len(clauses) < num_clauses:
        vs = rng.sample(range(1, num_vars + 1), 3)
        clause = tuple(v if rng.random() < 0.5 else -v for v in vs)
        if any(hidden[abs(l) - 1] == (l > 0) for l in clause):
            clauses.append(clause)
    return CnfFormula(num_vars, clauses), hidden


class MaxSat(Problem):
    name = "sat"
    integer_fitness = True

    def __init__(self, formula: CnfFormula):
        self.formula = formula

    def random_genome(self, rng):
        return random_bits(self.formula.num_vars, rng)

    def fitness(self, genome):
        return count_satisfied(genome, self.formula)

    def mutate(self, genome, rng):
        return flip_mutate(genome, rng)

    def crossover(self, a, b, rng):
        return uniform_crossover(a, b, rng)
