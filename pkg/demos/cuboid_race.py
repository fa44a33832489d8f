"""
Racing to the top of a random cuboid function
=============================================

Sixteen random boxes in the unit 4-cube; fitness counts the boxes that
contain a point. The true maximum is known exactly, so each run can stop
the moment it is found.
"""

from random import Random

from fussga import GaParams, SelectionScheme
from fussga.problems import CuboidFunction
from fussga.problems.synthetic import cuboid_function_generate
from fussga.stats import ExperimentSpec, by_scheme, generations_to_target, run_experiment

spec = cuboid_function_generate(Random("demo"))
print("true maximum:", spec.true_maximum, "witness:", [round(float(v), 3) for v in spec.argmax_witness])

exp = ExperimentSpec(CuboidFunction(spec), (SelectionScheme.fuss_integer(), SelectionScheme.tournament(2)),
                     GaParams(500, iteration_budget=200_000), replications=5, target="optimum")
for label, recs in by_scheme(run_experiment(exp)).items():
    stat, missed = generations_to_target(recs)
    print(f"{label:>8}: {stat.mean:6.2f} generations on average, {missed} runs missed")
