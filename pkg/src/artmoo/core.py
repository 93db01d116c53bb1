"""Problem-independent optimization primitives: individuals, dominance, ideal point."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Individual:
    """A candidate solution: decision vector plus cached objective vector.

    Treated as immutable after construction; evaluation produces a new
    instance via :meth:`with_objectives`.
    """

    x: np.ndarray
    f: np.ndarray | None = None

    @property
    def evaluated(self) -> bool:
        return self.f is not None

    def with_objectives(self, f) -> "Individual":
        return Individual(self.x, np.asarray(f, dtype=float))


# A population is an ordered list of individuals; insertion order is the
# iteration order, so seeded runs replay exactly.
Population = list


def decisions(pop) -> np.ndarray:
    """Stack decision vectors of a population into an (n, D) array."""
    return np.asarray([ind.x for ind in pop], dtype=float)


def objectives(pop) -> np.ndarray:
    """Stack objective vectors of an evaluated population into an (n, M) array."""
    return np.asarray([ind.f for ind in pop], dtype=float)


def dominates(a, b) -> bool:
    """Pareto dominance for minimization: a <= b everywhere and a < b somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective vectors differ in length: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def update_ideal(z_min: np.ndarray, F) -> np.ndarray:
    """Componentwise minimum of the current ideal point and a batch of objectives.

    An empty batch leaves the ideal point unchanged.
    """
    F = np.asarray(F, dtype=float)
    if F.size == 0:
        return np.asarray(z_min, dtype=float).copy()
    if F.ndim == 1:
        F = F[None, :]
    return np.minimum(np.asarray(z_min, dtype=float), F.min(axis=0))


def nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Boolean mask of the rows of F not dominated by any other row.

    Duplicate rows are all kept: dominance requires strict improvement in at
    least one objective.
    """
    F = np.asarray(F, dtype=float)
    n = F.shape[0]
    if n <= 1:
        return np.ones(n, dtype=bool)
    le = (F[:, None, :] <= F[None, :, :]).all(axis=-1)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=-1)
    dominated = (le & lt).any(axis=0)
    return ~dominated


def nondominated_filter(pop) -> list:
    """Members of a population not dominated by any other member, in stable order."""
    if not pop:
        return []
    mask = nondominated_mask(objectives(pop))
    return [ind for ind, keep in zip(pop, mask) if keep]
