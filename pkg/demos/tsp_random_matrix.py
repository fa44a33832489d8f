"""
Tours on a random distance matrix
=================================

Twenty cities with distances drawn uniformly from [0, 1]; no triangle
inequality. Swap mutation and PMX crossover; lower is better.
"""

from random import Random

from fussga import GaParams, SelectionScheme
from fussga.problems import TravelingSalesman
from fussga.problems.tsp import random_tsp_instance
from fussga.stats import ExperimentSpec, by_scheme, mean_best_at, run_experiment

problem = TravelingSalesman(random_tsp_instance(20, Random("demo")))
pop = 300
schemes = tuple(SelectionScheme.parse(s) for s in ["fuss", "tour2", "tour5", "tour15"])
spec = ExperimentSpec(problem, schemes, GaParams(pop, iteration_budget=60 * pop), replications=3)
groups = by_scheme(run_experiment(spec))

# mean best-ever tour length at a few checkpoints, in generations
print("generation " + " ".join(f"{label:>8}" for label in groups))
for gen in [0, 5, 15, 30, 60]:
    row = [problem.display(mean_best_at(groups[label], gen * pop)) for label in groups]
    print(f"{gen:>10} " + " ".join(f"{v:8.3f}" for v in row))
