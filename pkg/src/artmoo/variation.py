"""Offspring generation: simulated binary crossover, polynomial mutation, random init.

All operators consume an explicit numpy Generator so seeded runs replay exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Individual


@dataclass(frozen=True)
class VariationParams:
    """SBX / polynomial-mutation settings.

    ``p_m=None`` means the conventional 1/D per-variable mutation rate.
    """

    eta_c: float = 20.0
    p_c: float = 1.0
    eta_m: float = 20.0
    p_m: float | None = None


def sbx_crossover(p1, p2, bounds, params: VariationParams, rng: np.random.Generator) -> np.ndarray:
    """One child from simulated binary crossover of two parents.

    Non-exchanged variables (per-variable coin, or the whole-crossover coin
    failing with probability 1 - p_c) copy from the first parent.
    """
    lo, hi = bounds
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    d = p1.size
    u = rng.random(d)
    exponent = 1.0 / (params.eta_c + 1.0)
    beta = np.where(u <= 0.5, (2.0 * u) ** exponent, (0.5 / (1.0 - u)) ** exponent)
    beta *= (-1.0) ** rng.integers(0, 2, size=d)
    active = rng.random(d) < 0.5
    if not rng.random() < params.p_c:
        active[:] = False
    child = p1.copy()
    child[active] = 0.5 * (p1[active] + p2[active]) + 0.5 * beta[active] * (p1[active] - p2[active])
    return np.clip(child, lo, hi)


def polynomial_mutation(x, bounds, params: VariationParams, rng: np.random.Generator) -> np.ndarray:
    """Boundary-aware polynomial mutation of a decision vector."""
    lo, hi = bounds
    x = np.asarray(x, dtype=float)
    d = x.size
    p_m = params.p_m if params.p_m is not None else 1.0 / d
    span = hi - lo
    mask = (rng.random(d) < p_m) & (span > 0)
    u = rng.random(d)
    safe_span = np.where(span > 0, span, 1.0)
    delta1 = (x - lo) / safe_span
    delta2 = (hi - x) / safe_span
    power = 1.0 / (params.eta_m + 1.0)
    low = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - delta1) ** (params.eta_m + 1.0)
    high = 2.0 * (1.0 - u) + (2.0 * u - 1.0) * (1.0 - delta2) ** (params.eta_m + 1.0)
    deltaq = np.where(u < 0.5, low**power - 1.0, 1.0 - high**power)
    y = np.where(mask, x + deltaq * span, x)
    return np.clip(y, lo, hi)


def random_init(n: int, bounds, rng: np.random.Generator) -> list:
    """Population of n unevaluated individuals uniform within box bounds."""
    lo, hi = bounds
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    X = lo + rng.random((n, lo.size)) * (hi - lo)
    return [Individual(x) for x in X]
