"""
Diversity during a MAX-SAT run
==============================

A satisfiable random 3-CNF formula with 50 variables. Alongside the best
fitness we track mean pairwise Hamming distance over the whole population
and over its top 10%.
"""

from random import Random

from fussga import GaParams, SelectionScheme
from fussga.problems import MaxSat
from fussga.problems.sat import random_3cnf
from fussga.stats import ExperimentSpec, run_experiment

formula, hidden = random_3cnf(50, 215, Random("demo"))
pop = 500
schemes = (SelectionScheme.fuss_integer(), SelectionScheme.tournament(5))
spec = ExperimentSpec(MaxSat(formula), schemes, GaParams(pop, iteration_budget=10 * pop),
                      diversity=True)
results = run_experiment(spec)

for (label, _), rec in results.items():
    print(f"{label}: best {rec.best_ever} of {len(formula)} clauses")
    for snap in rec.snapshots[::20]:
        print(f"  generation {snap.iteration / pop:5.1f}   whole {snap.whole_population_diversity:.3f}"
              f"   top 10% {snap.top_fraction_diversity:.3f}")
