"""Reference vectors, objective-space angles, and APD-based environmental selection."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .core import objectives

# Near-duplicate adapted vectors would give a zero neighbor angle; the APD
# penalty divides by it.
GAMMA_FLOOR = 1e-6


def simplex_lattice(n_obj: int, divisions: int) -> np.ndarray:
    """All weight vectors with components k/H summing to 1, C(H+M-1, M-1) rows."""
    rows = []

    def recurse(prefix, remaining, slots):
        if slots == 1:
            rows.append(prefix + [remaining])
            return
        for k in range(remaining + 1):
            recurse(prefix + [k], remaining - k, slots - 1)

    recurse([], divisions, n_obj)
    return np.asarray(rows, dtype=float) / divisions


def lattice_size(n_obj: int, divisions: int) -> int:
    return comb(divisions + n_obj - 1, n_obj - 1)


def largest_divisions(n_obj: int, pop_size: int) -> int:
    """Largest H whose lattice does not exceed the population size (at least 1)."""
    h = 1
    while lattice_size(n_obj, h + 1) <= pop_size:
        h += 1
    return h


def angle(a, b) -> float:
    """Angle between two nonzero vectors, in [0, pi]."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise ValueError("angle is undefined for a zero vector")
    return float(np.arccos(np.clip(a @ b / (na * nb), -1.0, 1.0)))


def _unit_rows(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-normalized copy of A plus a mask of zero rows (left as zeros)."""
    norms = np.linalg.norm(A, axis=1)
    zero = norms == 0.0
    safe = np.where(zero, 1.0, norms)
    return A / safe[:, None], zero


def angles_between(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Pairwise angles between rows of A and rows of B; zero rows get angle 0."""
    ua, za = _unit_rows(np.asarray(A, dtype=float))
    ub, zb = _unit_rows(np.asarray(B, dtype=float))
    cos = np.clip(ua @ ub.T, -1.0, 1.0)
    theta = np.arccos(cos)
    if za.any():
        theta[za, :] = 0.0
    if zb.any():
        theta[:, zb] = 0.0
    return theta


@dataclass(frozen=True)
class ReferenceVectorSet:
    """Unit direction vectors plus each vector's minimum angle to the others."""

    vectors: np.ndarray
    gamma: np.ndarray

    def __len__(self) -> int:
        return len(self.vectors)

    @classmethod
    def from_directions(cls, W) -> "ReferenceVectorSet":
        """Normalize rows, drop exact duplicates, and compute neighbor angles."""
        W = np.atleast_2d(np.asarray(W, dtype=float))
        norms = np.linalg.norm(W, axis=1)
        keep = norms > 0.0
        U = W[keep] / norms[keep, None]
        # stable dedup of exactly equal unit vectors
        seen = set()
        rows = []
        for row in U:
            key = row.tobytes()
            if key not in seen:
                seen.add(key)
                rows.append(row)
        U = np.asarray(rows)
        if len(U) == 0:
            raise ValueError("reference vector set is empty")
        if len(U) == 1:
            gamma = np.array([np.pi / 2])
        else:
            theta = angles_between(U, U)
            np.fill_diagonal(theta, np.inf)
            gamma = np.maximum(theta.min(axis=1), GAMMA_FLOOR)
        return cls(U, gamma)


def das_dennis(n_obj: int, divisions: int) -> ReferenceVectorSet:
    """Uniform simplex-lattice reference vectors, unit-normalized for angle use."""
    return ReferenceVectorSet.from_directions(simplex_lattice(n_obj, divisions))


@dataclass(frozen=True)
class ApdContext:
    """Generation progress and shape parameters of the angle penalty."""

    t: int
    t_max: int
    alpha: float
    n_obj: int

    def rate(self) -> float:
        return self.n_obj * (self.t / self.t_max) ** self.alpha


def angle_penalized_distance(norm_f: float, theta: float, ctx: ApdContext, gamma_j: float) -> float:
    """Translated-objective norm, penalized by the angle to the reference vector."""
    return (1.0 + ctx.rate() * theta / gamma_j) * norm_f


def associate(G: np.ndarray, rvs: ReferenceVectorSet) -> tuple[np.ndarray, np.ndarray]:
    """Assign each translated objective row to its smallest-angle vector.

    Returns (assignment, theta) where theta is the full (n, K) angle matrix.
    Zero rows are assigned to vector 0 with angle 0; ties take the lowest
    vector index.
    """
    G = np.atleast_2d(np.asarray(G, dtype=float))
    theta = angles_between(G, rvs.vectors)
    assign = theta.argmin(axis=1)
    zero = np.linalg.norm(G, axis=1) == 0.0
    assign[zero] = 0
    return assign, theta


def apd_winners(G: np.ndarray, rvs: ReferenceVectorSet, ctx: ApdContext) -> list[int]:
    """Row index of the APD-minimizing solution for each nonempty sub-population."""
    G = np.atleast_2d(np.asarray(G, dtype=float))
    assign, theta = associate(G, rvs)
    norms = np.linalg.norm(G, axis=1)
    rate = ctx.rate()
    winners = []
    for j in range(len(rvs)):
        members = np.flatnonzero(assign == j)
        if members.size == 0:
            continue
        apd = (1.0 + rate * theta[members, j] / rvs.gamma[j]) * norms[members]
        winners.append(int(members[int(np.argmin(apd))]))
    return winners


def _min_angle_truncate(G: np.ndarray, kept: list[int], target: int) -> list[int]:
    """Iteratively drop the kept member with the smallest angle to the rest."""
    kept = list(kept)
    idx = np.asarray(kept)
    theta = angles_between(G[idx], G[idx])
    np.fill_diagonal(theta, np.inf)
    alive = np.ones(len(kept), dtype=bool)
    closest = theta.min(axis=1)
    closest_arg = theta.argmin(axis=1)
    for _ in range(len(kept) - target):
        victim = int(np.flatnonzero(alive)[np.argmin(closest[alive])])
        alive[victim] = False
        theta[:, victim] = np.inf
        closest[victim] = np.inf
        stale = alive & (closest_arg == victim)
        if stale.any():
            closest[stale] = theta[stale].min(axis=1)
            closest_arg[stale] = theta[stale].argmin(axis=1)
    return [kept[i] for i in np.flatnonzero(alive)]


def _max_min_angle_fill(G: np.ndarray, kept: list[int], target: int) -> list[int]:
    """Iteratively add the unselected solution with the largest min angle to the kept set."""
    kept = list(kept)
    pool = [i for i in range(len(G)) if i not in set(kept)]
    if not pool:
        return kept
    pool_idx = np.asarray(pool)
    if kept:
        novelty = angles_between(G[pool_idx], G[np.asarray(kept)]).min(axis=1)
    else:
        novelty = np.full(len(pool), np.inf)
    taken = np.zeros(len(pool), dtype=bool)
    while len(kept) < target and not taken.all():
        masked = np.where(taken, -np.inf, novelty)
        pick = int(np.argmax(masked))
        taken[pick] = True
        chosen = pool[pick]
        kept.append(chosen)
        update = angles_between(G[pool_idx], G[chosen][None, :])[:, 0]
        novelty = np.minimum(novelty, update)
    return kept


def environmental_selection(pop, rvs: ReferenceVectorSet, ctx: ApdContext, z_min, target: int) -> list:
    """APD winners per reference vector, then angle-based truncation or novelty fill.

    Returns exactly min(target, len(pop)) members in ascending original order.
    """
    if not pop:
        return []
    G = objectives(pop) - np.asarray(z_min, dtype=float)
    kept = apd_winners(G, rvs, ctx)
    target = min(target, len(pop))
    if len(kept) > target:
        kept = _min_angle_truncate(G, kept, target)
    elif len(kept) < target:
        kept = _max_min_angle_fill(G, kept, target)
    return [pop[i] for i in sorted(kept)]
