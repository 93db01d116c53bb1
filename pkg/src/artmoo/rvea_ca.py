"""Clustering-adaptive RVEA: reference vectors and mating pairs come from an
ART network retrained each generation on the hyperplane-mapped population.

Per generation: cluster-guided reproduction, an epsilon-indicator archive,
network training with an auto-tuned similarity threshold (skipped in the last
10% of generations, when the vector set is frozen with the archive folded in),
and APD environmental selection.
"""

from __future__ import annotations

import time
from math import floor

import numpy as np

from .core import Individual, nondominated_mask, objectives, update_ideal
from .evolution import RunResult, as_rng, evaluate_batch, random_mating
from .network import TopoNetwork, adaptive_train_ca, connected_components
from .refvec import ApdContext, ReferenceVectorSet, angles_between, environmental_selection
from .variation import VariationParams, polynomial_mutation, random_init, sbx_crossover


class Archive:
    """Bounded store of mutually non-dominated solutions."""

    def __init__(self, members: list, capacity: int):
        self.members = members
        self.capacity = capacity

    def __len__(self) -> int:
        return len(self.members)


def identity_union(first: list, second: list) -> list:
    """Concatenate, skipping objects already present (value duplicates are kept)."""
    seen = {id(ind) for ind in first}
    out = list(first)
    out.extend(ind for ind in second if id(ind) not in seen)
    return out


def _epsilon_truncate_indices(F: np.ndarray, capacity: int) -> np.ndarray:
    """Indices surviving iterative removal of the lowest epsilon-contribution member.

    A member's contribution is how far the rest of the set is from covering it
    (additive epsilon on range-scaled objectives; translation cancels in the
    differences). Duplicates contribute zero and go first.
    """
    n = len(F)
    span = F.max(axis=0) - F.min(axis=0)
    G = F / np.where(span > 0, span, 1.0)
    D = (G[:, None, :] - G[None, :, :]).max(axis=-1)
    np.fill_diagonal(D, np.inf)
    alive = np.ones(n, dtype=bool)
    contrib = D.min(axis=0)
    closest = D.argmin(axis=0)
    for _ in range(n - capacity):
        victim = int(np.flatnonzero(alive)[np.argmin(contrib[alive])])
        alive[victim] = False
        D[victim, :] = np.inf
        contrib[victim] = np.inf
        stale = alive & (closest == victim)
        if stale.any():
            contrib[stale] = D[:, stale].min(axis=0)
            closest[stale] = D[:, stale].argmin(axis=0)
    return np.flatnonzero(alive)


def update_archive(pop: list, archive: Archive | None, pop_size: int) -> Archive:
    """Merge the population into the archive, keeping non-dominated members
    and truncating to twice the population size by epsilon contribution."""
    capacity = 2 * pop_size
    candidates = identity_union(pop, archive.members if archive else [])
    if not candidates:
        return Archive([], capacity)
    F = objectives(candidates)
    keep = np.flatnonzero(nondominated_mask(F))
    if keep.size > capacity:
        keep = keep[_epsilon_truncate_indices(F[keep], capacity)]
    return Archive([candidates[i] for i in keep], capacity)


def map_to_hyperplane(F, z_min) -> np.ndarray:
    """Translate by the ideal point and project onto the unit-sum simplex.

    Rows translating to (numerically) zero map to the uniform vector.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    G = F - np.asarray(z_min, dtype=float)
    total = G.sum(axis=1)
    M = F.shape[1]
    safe = np.where(total > 1e-12, total, 1.0)
    out = np.where((total > 1e-12)[:, None], G / safe[:, None], 1.0 / M)
    return out


def predict_labels(pop: list, net: TopoNetwork, z_min) -> np.ndarray:
    """Cluster label per solution: connected component of the smallest-angle node."""
    if net is None or net.node_count == 0:
        raise ValueError("network has no nodes")
    G = objectives(pop) - np.asarray(z_min, dtype=float)
    theta = angles_between(G, net.positions)
    nearest = theta.argmin(axis=1)
    return connected_components(net)[nearest]


def select_mate(r: int, labels: np.ndarray, F: np.ndarray, rng: np.random.Generator) -> int | None:
    """Mate index for parent r, or None when its cluster is a singleton.

    Multi-member clusters mate either with the nearest-objective solution from
    another cluster (half the time, when another cluster exists) or with a
    uniform random member of their own cluster.
    """
    mates = np.flatnonzero(labels == labels[r])
    if mates.size <= 1:
        return None
    s = rng.random()
    if s < 0.5 and len(np.unique(labels)) > 1:
        others = np.flatnonzero(labels != labels[r])
        return int(others[int(np.argmin(np.linalg.norm(F[others] - F[r], axis=1)))])
    mates = mates[mates != r]
    return int(mates[int(rng.integers(mates.size))])


def cluster_based_reproduction(
    pop: list,
    net: TopoNetwork | None,
    z_min,
    problem,
    params: VariationParams,
    rng: np.random.Generator,
) -> list:
    """One evaluated offspring per random parent draw.

    Lone cluster members are only mutated; with no network everything
    degenerates to random mating.
    """
    n = len(pop)
    bounds = problem.bounds
    if net is None or net.node_count == 0:
        return evaluate_batch(problem, random_mating(pop, bounds, params, rng, n))
    labels = predict_labels(pop, net, z_min)
    F = objectives(pop)
    children = []
    for r in rng.integers(0, n, size=n):
        r = int(r)
        q = select_mate(r, labels, F, rng)
        if q is None:
            children.append(Individual(polynomial_mutation(pop[r].x, bounds, params, rng)))
        else:
            child = sbx_crossover(pop[r].x, pop[q].x, bounds, params, rng)
            children.append(Individual(polynomial_mutation(child, bounds, params, rng)))
    return evaluate_batch(problem, children)


def run_rvea_ca(
    problem,
    pop_size: int,
    t_max: int,
    window: int = 100,
    params: VariationParams | None = None,
    rng=None,
    *,
    alpha: float = 2.0,
    trace_hook=None,
) -> RunResult:
    """Run the clustering-adaptive algorithm for ``t_max`` offspring generations."""
    start = time.perf_counter()
    rng, seed = as_rng(rng)
    params = params or VariationParams()
    M = problem.n_obj

    pop = evaluate_batch(problem, random_init(pop_size, problem.bounds, rng))
    evaluations = pop_size
    z_min = objectives(pop).min(axis=0)
    archive = update_archive(pop, None, pop_size)
    threshold = 0.1
    net: TopoNetwork | None = None
    # Training happens while t <= 0.9 * t_max; afterwards the vectors stay
    # frozen. Until the first training pass (or if none occurs) the archive
    # directions stand in for the vector set.
    t_freeze = floor(0.9 * t_max)
    rvs = ReferenceVectorSet.from_directions(
        map_to_hyperplane(objectives(archive.members), z_min)
    )

    for t in range(1, t_max + 1):
        offspring = cluster_based_reproduction(pop, net, z_min, problem, params, rng)
        evaluations += pop_size
        z_min = update_ideal(z_min, objectives(offspring))
        pop = pop + offspring
        archive = update_archive(pop, archive, pop_size)
        pop = identity_union(pop, archive.members)
        if t <= t_freeze:
            X = map_to_hyperplane(objectives(pop), z_min)
            X = X[rng.permutation(len(X))]
            trained = adaptive_train_ca(X, window, threshold, pop_size)
            net = trained.network
            threshold = trained.threshold
            directions = net.positions
            if t == t_freeze:
                directions = np.vstack(
                    [directions, map_to_hyperplane(objectives(archive.members), z_min)]
                )
            rvs = ReferenceVectorSet.from_directions(directions)
        ctx = ApdContext(t, t_max, alpha, M)
        pop = environmental_selection(pop, rvs, ctx, z_min, pop_size)
        if trace_hook is not None:
            trace_hook(
                t,
                objectives(pop),
                {
                    "archive": len(archive),
                    "nodes": net.node_count if net is not None else 0,
                    "components": int(connected_components(net).max() + 1)
                    if net is not None and net.node_count
                    else 0,
                    "v": threshold,
                },
            )

    return RunResult(
        algorithm="rvea-ca",
        problem=problem.name,
        n_obj=M,
        seed=seed,
        decisions=np.asarray([ind.x for ind in pop]),
        objectives=objectives(pop),
        n_evaluations=evaluations,
        wall_clock=time.perf_counter() - start,
        network=net,
        threshold=threshold,
    )
