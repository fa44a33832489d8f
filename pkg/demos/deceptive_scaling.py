"""
Scaling on the deceptive square
===============================

The optimum is a delta-by-delta square hidden behind two ridges of lower
fitness. The expected cost of halving delta is a factor of two in
generations for FUSS and a factor of four for random search; the fitted
log-log slopes below show how close each scheme comes.
"""

from fussga import GaParams, SelectionScheme
from fussga.problems import Deceptive2d, Deceptive2dSpec
from fussga.stats import ExperimentSpec, by_scheme, generations_to_target, run_experiment, scaling_fit

deltas = [0.2, 0.1, 0.05]
schemes = (SelectionScheme.fuss_integer(), SelectionScheme.random(), SelectionScheme.tournament(2))
# initial population of 10, crossover probability 0.25
params = GaParams(1_000, 10, crossover_probability=0.25, iteration_budget=1_000_000)

means = {s.label: [] for s in schemes}
for delta in deltas:
    spec = ExperimentSpec(Deceptive2d(Deceptive2dSpec(delta=delta)), schemes, params,
                          replications=20, target="optimum")
    for label, recs in by_scheme(run_experiment(spec)).items():
        stat, _ = generations_to_target(recs)
        means[label].append(stat.mean)
        print(f"delta {delta:<5} {label:>8}: {stat.mean:8.2f} generations")

for label, m in means.items():
    print(f"{label:>8} log-log slope {scaling_fit(list(zip(deltas, m))):+.2f}")
