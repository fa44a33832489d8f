"""Steady-state genetic algorithm with fitness uniform and tournament selection."""

from .engine import GaParams, RunRecord, StepOutcome, initialize_population, run, step
from .population import FitnessLevelTable, Individual, Population
from .selection import (
    SelectionScheme,
    fuss_select_integer,
    fuss_select_real,
    random_select,
    select,
    selection_probabilities,
    selector,
    tournament_select,
)

__all__ = [
    "FitnessLevelTable",
    "GaParams",
    "Individual",
    "Population",
    "RunRecord",
    "SelectionScheme",
    "StepOutcome",
    "fuss_select_integer",
    "fuss_select_real",
    "initialize_population",
    "random_select",
    "run",
    "select",
    "selection_probabilities",
    "selector",
    "step",
    "tournament_select",
]
