import io
import math
from random import Random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fussga import GaParams, SelectionScheme
from fussga.problems import Deceptive2d, Deceptive2dSpec, MaxSat, TravelingSalesman
from fussga.problems.sat import random_3cnf
from fussga.problems.tsp import random_tsp_instance
from fussga.stats import (
    SUMMARY_COLUMNS,
    ExperimentError,
    ExperimentSpec,
    generations_to_target,
    mean_best_at,
    run_experiment,
    scaling_fit,
    summarize,
    summary_csv_text,
    write_trace_csv,
)


def two_pass(values):
    n = len(values)
    mean = math.fsum(values) / n
    var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var)


def test_summarize_hand_example():
    s = summarize([2, 4, 6])
    assert s.mean == 4 and s.sample_stddev == pytest.approx(2)
    assert s.standard_error == pytest.approx(1.1547, abs=1e-4)
    assert s.ci95_low == pytest.approx(1.737, abs=1e-3)
    assert s.ci95_high == pytest.approx(6.263, abs=1e-3)
    assert s.n == 3


def test_summarize_degenerate():
    with pytest.raises(ValueError):
        summarize([])
    one = summarize([7.5])
    assert one.mean == 7.5 and one.sample_stddev is None and one.ci95_low is None
    flat = summarize([3, 3, 3, 3])
    assert summarize([699051.3159742563] * 3).sample_stddev == 0
    assert flat.sample_stddev == 0 and flat.ci95_low == flat.ci95_high == 3


@given(st.lists(st.floats(-1e6, 1e6), min_size=2, max_size=40), st.floats(-1e3, 1e3))
def test_summarize_against_two_pass(values, shift):
    s = summarize(values)
    mean, sd = two_pass(values)
    assert s.mean == pytest.approx(mean, rel=1e-12, abs=1e-6)
    assert s.sample_stddev == pytest.approx(sd, rel=1e-9, abs=1e-6)
    assert s.standard_error == pytest.approx(s.sample_stddev / math.sqrt(len(values)))
    assert s.ci95_high == pytest.approx(s.mean + 1.96 * s.standard_error, rel=1e-12, abs=1e-9)
    shifted = summarize([v + shift for v in values])
    assert shifted.mean == pytest.approx(s.mean + shift, abs=1e-6)


def test_scaling_fit_exact_laws():
    assert scaling_fit([(0.2, 5), (0.1, 10), (0.05, 20)]) == pytest.approx(-1, abs=1e-9)
    assert scaling_fit([(0.2, 25), (0.1, 100), (0.05, 400)]) == pytest.approx(-2, abs=1e-9)


def test_scaling_fit_tolerates_noise():
    rng = np.random.default_rng(3)
    deltas = np.array([0.2, 0.1, 0.05, 0.025])
    for _ in range(100):
        gens = 5 / deltas**2 * rng.uniform(0.9, 1.1, size=4)
        assert -2.2 < scaling_fit(list(zip(deltas, gens))) < -1.8


@pytest.mark.parametrize("points", [[(0.1, 1), (0.2, 2)], [(0.1, 1), (0.2, 0), (0.3, 3)],
                                    [(-0.1, 1), (0.2, 2), (0.3, 3)]])
def test_scaling_fit_rejects(points):
    with pytest.raises(ValueError):
        scaling_fit(points)


def deceptive_spec(**kw):
    base = dict(problem=Deceptive2d(Deceptive2dSpec(delta=0.2)),
                schemes=(SelectionScheme.fuss_integer(), SelectionScheme.random()),
                params=GaParams(300, 10, crossover_probability=0.25, iteration_budget=40_000),
                replications=3, base_seed=50, target="optimum")
    base.update(kw)
    return ExperimentSpec(**base)


def test_seeds_are_paired_across_schemes():
    results = run_experiment(deceptive_spec())
    assert list(results) == sorted(results)
    for r in range(3):
        assert results[("fussint", r)].seed == results[("rand", r)].seed == 50 + r


def test_factory_instances_are_shared_by_schemes():
    seen = []

    def factory(rng):
        inst = random_tsp_instance(6, rng)
        seen.append(inst.distances.copy())
        return TravelingSalesman(inst)

    spec = ExperimentSpec(factory, (SelectionScheme.fuss(), SelectionScheme.tournament(2)),
                          GaParams(30, iteration_budget=100), replications=2)
    run_experiment(spec)
    assert np.array_equal(seen[0], seen[2]) and np.array_equal(seen[1], seen[3])
    assert not np.array_equal(seen[0], seen[1])


def test_experiment_is_deterministic():
    a = run_experiment(deceptive_spec())
    b = run_experiment(deceptive_spec())
    assert summary_csv_text(a) == summary_csv_text(b)
    assert all(a[k].trace == b[k].trace for k in a)


def test_generations_to_target_counts_failures():
    tiny = Deceptive2d(Deceptive2dSpec(delta=0.001))
    results = run_experiment(deceptive_spec(problem=tiny, params=GaParams(300, 10, iteration_budget=5)))
    stat, failures = generations_to_target([results[("rand", r)] for r in range(3)])
    assert stat is None and failures == 3


def test_summary_csv_layout():
    text = summary_csv_text(run_experiment(deceptive_spec()))
    lines = text.splitlines()
    assert lines[0].split(",") == SUMMARY_COLUMNS
    assert [ln.split(",")[0] for ln in lines[1:]] == ["fussint", "rand"]


def test_trace_csv_with_diversity():
    formula, _ = random_3cnf(20, 80, Random(1))
    spec = ExperimentSpec(MaxSat(formula), (SelectionScheme.tournament(5),),
                          GaParams(100, iteration_budget=300), diversity=True)
    rec = run_experiment(spec)[("tour5", 0)]
    buf = io.StringIO()
    write_trace_csv(rec, buf, diversity=True)
    rows = [ln.split(",") for ln in buf.getvalue().splitlines()]
    assert rows[0] == ["iteration", "generation", "best_ever_fitness",
                       "whole_diversity", "top_diversity"]
    assert rows[1][0] == "0" and rows[1][3] != ""
    assert mean_best_at([rec], 300) == rec.best_ever


def test_failures_are_wrapped_with_context():
    class Broken(Deceptive2d):
        def mutate(self, genome, rng):
            raise RuntimeError("nope")

    spec = ExperimentSpec(Broken(), (SelectionScheme.random(),),
                          GaParams(10, iteration_budget=10, crossover_probability=0.0),
                          replications=1)
    with pytest.raises(ExperimentError) as err:
        run_experiment(spec)
    assert err.value.scheme == "rand" and err.value.replication == 0


def test_spec_validation():
    with pytest.raises(ValueError):
        deceptive_spec(replications=0)
    with pytest.raises(ValueError):
        deceptive_spec(schemes=())
