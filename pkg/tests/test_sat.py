from random import Random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fussga.errors import ParseError
from fussga.problems import MaxSat
from fussga.problems.sat import (
    CnfFormula,
    count_satisfied,
    flip_mutate,
    format_dimacs,
    parse_dimacs,
    random_3cnf,
    random_bits,
    uniform_crossover,
)

# variables a..f are 1..6
SMALL = CnfFormula(6, [(1, 2, -3), (1, -5, 6)])


def brute_count(a, formula):
    """Clause-by-clause re-evaluation, no numpy tricks."""
    total = 0
    for clause in formula.clauses:
        total += any(bool(a[abs(l) - 1]) == (l > 0) for l in clause)
    return total


def test_small_formula_worked_assignment():
    # a=F b=T c=T d=F e=T f=F: first clause holds via b, second fails
    a = np.array([0, 1, 1, 0, 1, 0], dtype=bool)
    assert count_satisfied(a, SMALL) == 1


def test_all_true_satisfies_both():
    assert count_satisfied(np.ones(6, dtype=bool), SMALL) == 2


def test_assignment_length_checked():
    with pytest.raises(ValueError):
        count_satisfied(np.ones(5, dtype=bool), SMALL)


@given(st.integers(0, 2**32), st.integers(1, 6))
def test_count_matches_brute_force(seed, width):
    rng = Random(seed)
    n = 12
    clauses = [tuple(rng.choice((-1, 1)) * rng.randint(1, n) for _ in range(rng.randint(1, width)))
               for _ in range(30)]
    f = CnfFormula(n, clauses)
    a = random_bits(n, rng)
    assert count_satisfied(a, f) == brute_count(a, f)


def test_random_bits_shape_and_balance():
    rng = Random(0)
    bits = np.array([random_bits(13, rng) for _ in range(20_000)])
    assert bits.shape == (20_000, 13) and bits.dtype == bool
    assert np.allclose(bits.mean(axis=0), 0.5, atol=0.015)


@given(st.integers(0, 2**32))
def test_flip_is_one_bit(seed):
    rng = Random(seed)
    a = random_bits(40, rng)
    child = flip_mutate(a, rng)
    assert np.count_nonzero(a != child) == 1
    assert np.count_nonzero(a != random_bits(40, Random(seed))) == 0  # parent untouched


def test_flip_position_uniform():
    rng = Random(3)
    a = np.zeros(10, dtype=bool)
    hits = np.zeros(10)
    for _ in range(50_000):
        hits += flip_mutate(a, rng)
    assert np.allclose(hits / 50_000, 0.1, atol=0.006)


def test_crossover_takes_each_bit_from_a_parent():
    rng = Random(5)
    for _ in range(200):
        p, q = random_bits(30, rng), random_bits(30, rng)
        c = uniform_crossover(p, q, rng)
        assert np.all((c == p) | (c == q))
    p = np.zeros(8, dtype=bool)
    assert np.array_equal(uniform_crossover(p, p, rng), p)


def test_crossover_mixes_evenly():
    rng = Random(6)
    p, q = np.zeros(16, dtype=bool), np.ones(16, dtype=bool)
    from_q = np.zeros(16)
    for _ in range(20_000):
        from_q += uniform_crossover(p, q, rng)
    assert np.allclose(from_q / 20_000, 0.5, atol=0.015)


def test_crossover_length_mismatch():
    with pytest.raises(ValueError):
        uniform_crossover(np.zeros(3, bool), np.zeros(4, bool), Random(0))


def test_parse_small_file():
    text = "c example\np cnf 6 2\n1 2 -3 0\n1 -5 6 0\n"
    assert parse_dimacs(text) == SMALL


def test_clause_may_span_lines_and_share_them():
    text = "p cnf 6 2\n1 2\n-3 0 1\n-5 6 0\n"
    assert parse_dimacs(text) == SMALL


def test_percent_line_ends_data():
    text = "p cnf 6 2\n1 2 -3 0\n1 -5 6 0\n%\n0\n\n"
    assert parse_dimacs(text) == SMALL


def test_round_trip_planted_instance():
    f, hidden = random_3cnf(150, 645, Random("rt"))
    assert count_satisfied(hidden, f) == 645
    back = parse_dimacs(format_dimacs(f))
    assert back == f
    a = random_bits(150, Random(1))
    assert count_satisfied(a, back) == count_satisfied(a, f)


def test_planted_clauses_use_distinct_variables():
    f, _ = random_3cnf(20, 100, Random(2))
    assert all(len({abs(l) for l in c}) == 3 for c in f.clauses)


@pytest.mark.parametrize("text,line", [
    ("1 2 0\n", 1),
    ("p cnf 3 1\np cnf 3 1\n1 0\n", 2),
    ("p cnf 3 1\n1 x 0\n", 2),
    ("p cnf 3 1\n4 0\n", 2),
    ("p cnf 3 2\n1 0\n", 2),
    ("p cnf 3 1\n\n1 2\n", 3),
    ("p dnf 3 1\n", 1),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as err:
        parse_dimacs(text)
    assert err.value.line == line


def test_problem_wrapper():
    problem = MaxSat(SMALL)
    g = problem.random_genome(Random(0))
    assert problem.integer_fitness and not problem.minimize
    assert problem.fitness(g) == brute_count(g, SMALL)
