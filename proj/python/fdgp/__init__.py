"""Fuzzy dynamical genetic programming in XCSF, with the Frog Problem harness."""

import json as _json

from ._core import (
    Classifier,
    ExperimentConfig,
    FlnConfig,
    FlnGenome,
    FlnNode,
    FuzzyFunction,
    MetricsRow,
    Rng,
    XcsfParams,
    accuracy,
    apply_function,
    check_invariants,
    compute_prediction,
    genomes_equal,
    mutate_genome,
    optimal_action,
    payoff,
    random_genome,
    run_network,
    sense,
)
from ._core import run_experiment as _run_experiment

__version__ = "0.1.0"


def run_experiment(config):
    """Run a Frog experiment. Returns (rows, summary dict)."""
    rows, summary = _run_experiment(config)
    return rows, _json.loads(summary)


__all__ = [
    "Classifier",
    "ExperimentConfig",
    "FlnConfig",
    "FlnGenome",
    "FlnNode",
    "FuzzyFunction",
    "MetricsRow",
    "Rng",
    "XcsfParams",
    "accuracy",
    "apply_function",
    "check_invariants",
    "compute_prediction",
    "genomes_equal",
    "mutate_genome",
    "optimal_action",
    "payoff",
    "random_genome",
    "run_experiment",
    "run_network",
    "sense",
]
