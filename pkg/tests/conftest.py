from random import Random

import pytest

from fussga import Individual, Population


def make_pop(fitnesses, genomes=None):
    genomes = genomes if genomes is not None else list(range(len(fitnesses)))
    return Population(Individual(g, f) for g, f in zip(genomes, fitnesses))


def frequencies(pop, draw, n, rng):
    counts = [0] * len(pop)
    for _ in range(n):
        counts[draw(pop, rng)] += 1
    return [c / n for c in counts]


@pytest.fixture
def rng():
    return Random(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
