"""Shared machinery for evolutionary runs: evaluation, mating, result records."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Individual, decisions
from .network import TopoNetwork
from .variation import VariationParams, polynomial_mutation, sbx_crossover


@dataclass
class RunResult:
    """Outcome of one optimization run."""

    algorithm: str
    problem: str
    n_obj: int
    seed: int | None
    decisions: np.ndarray
    objectives: np.ndarray
    n_evaluations: int
    wall_clock: float
    network: TopoNetwork | None = None
    threshold: float | None = None


def as_rng(rng) -> tuple[np.random.Generator, int | None]:
    """Coerce an int seed or Generator; the seed is kept for record-keeping."""
    if isinstance(rng, np.random.Generator):
        return rng, None
    seed = None if rng is None else int(rng)
    return np.random.default_rng(seed), seed


def evaluate_batch(problem, pop) -> list:
    """Evaluate every individual in one vectorized call."""
    if not pop:
        return []
    F = problem.evaluate_batch(decisions(pop))
    return [ind.with_objectives(f) for ind, f in zip(pop, F)]


def random_mating(pop, bounds, params: VariationParams, rng: np.random.Generator, count: int) -> list:
    """Unevaluated offspring from uniformly random distinct parent pairs."""
    n = len(pop)
    children = []
    for _ in range(count):
        i = int(rng.integers(n))
        if n > 1:
            j = int(rng.integers(n - 1))
            if j >= i:
                j += 1
        else:
            j = i
        child = sbx_crossover(pop[i].x, pop[j].x, bounds, params, rng)
        children.append(Individual(polynomial_mutation(child, bounds, params, rng)))
    return children
