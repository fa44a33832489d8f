"""
Set covering with greedy repair
===============================

Write a random instance in OR-Library layout, read it back, and let the GA
minimise the cover cost. Every genome the operators produce is repaired
into a feasible, redundancy-free cover.
"""

from random import Random

import numpy as np

from fussga import GaParams, SelectionScheme, run
from fussga.problems import ScpInstance, SetCover
from fussga.problems.scp import format_orlib, parse_orlib

rng = Random("demo")
m, n = 30, 20
matrix = np.array([[rng.random() < 0.15 for _ in range(n)] for _ in range(m)])
matrix[np.arange(m), np.arange(m) % n] = True  # every row coverable
inst = ScpInstance.from_matrix(matrix, [rng.randint(1, 30) for _ in range(n)])

text = format_orlib(inst)
print(text.splitlines()[0], "...", len(text.splitlines()), "lines")
inst = parse_orlib(text)

# 2**20 subsets: enumerate them all as bitmasks
subsets = np.arange(1, 2**n, dtype=np.int64)
row_masks = [sum(1 << j for j in cols) for cols in inst.row_cols]
feasible = np.ones(len(subsets), dtype=bool)
for mask in row_masks:
    feasible &= (subsets & mask) != 0
bits = (subsets[feasible, None] >> np.arange(n)) & 1
best = int((bits @ inst.costs).min())
print("enumerated optimum:", best)

# repair alone often lands on the optimum, so start from a single cover
# to watch the search rather than the initial sample
problem = SetCover(inst)
params = GaParams(100, 1, crossover_probability=1.0, iteration_budget=20_000, rng_seed=3)
for label in ["fussint", "tour2", "tour15"]:
    rec = run(problem, SelectionScheme.parse(label), params, target=problem.to_engine(best))
    hit = f"found at generation {rec.target_generations:.2f}" if rec.target_reached else "not found"
    print(f"{label:>8}: best cost {problem.display(rec.best_ever)}, optimum {hit}")
