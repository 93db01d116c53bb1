"""Topological ART clustering: vigilance-gated node creation over an aged edge graph.

Training presents instances one at a time. Winner nodes are found by CIM
against the mean node bandwidth; the vigilance test decides whether an
instance spawns a node or refines the winners. Nodes are never deleted (each
caller retrains from empty), so node ids are stable creation-order integers.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

import numpy as np

from .cim import cim_rows, estimate_bandwidth


class InsufficientNodesError(RuntimeError):
    """Raised when winner selection needs at least two nodes."""


class VigilanceOutcome(enum.Enum):
    NEW_NODE = "new-node"
    FIRST_WINNER = "first-winner"
    BOTH_WINNERS = "both-winners"


class TopoNetwork:
    """Prototype nodes (position, bandwidth, win count) plus aged undirected edges."""

    def __init__(self, dim: int):
        self.dim = dim
        self._pos = np.empty((16, dim), dtype=float)
        self._sigma = np.empty(16, dtype=float)
        self._alpha = np.empty(16, dtype=np.int64)
        self._n = 0
        self._sigma_sum = 0.0
        self._adj: list[set[int]] = []
        self._age: dict[tuple[int, int], float] = {}

    # -- nodes ---------------------------------------------------------------

    @property
    def node_count(self) -> int:
        return self._n

    @property
    def positions(self) -> np.ndarray:
        return self._pos[: self._n]

    @property
    def bandwidths(self) -> np.ndarray:
        return self._sigma[: self._n]

    @property
    def win_counts(self) -> np.ndarray:
        return self._alpha[: self._n]

    def mean_bandwidth(self) -> float:
        if self._n == 0:
            raise InsufficientNodesError("network has no nodes")
        return self._sigma_sum / self._n

    def add_node(self, x, sigma: float) -> int:
        if self._n == len(self._sigma):
            grow = max(16, self._n)
            self._pos = np.vstack([self._pos, np.empty((grow, self.dim))])
            self._sigma = np.concatenate([self._sigma, np.empty(grow)])
            self._alpha = np.concatenate([self._alpha, np.empty(grow, dtype=np.int64)])
        k = self._n
        self._pos[k] = x
        self._sigma[k] = sigma
        self._alpha[k] = 1
        self._sigma_sum += sigma
        self._adj.append(set())
        self._n += 1
        return k

    # -- edges ---------------------------------------------------------------

    @staticmethod
    def _key(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    def neighbors(self, k: int) -> set[int]:
        return self._adj[k]

    def edge_age(self, a: int, b: int) -> float:
        return self._age[self._key(a, b)]

    def set_edge(self, a: int, b: int, age: float = 0.0) -> None:
        if a == b:
            raise ValueError("self-loop edges are not allowed")
        self._adj[a].add(b)
        self._adj[b].add(a)
        self._age[self._key(a, b)] = age

    def remove_edge(self, a: int, b: int) -> None:
        self._adj[a].discard(b)
        self._adj[b].discard(a)
        self._age.pop(self._key(a, b), None)

    def edges(self):
        """Edges as (a, b, age) with a < b, in deterministic sorted order."""
        return [(a, b, self._age[(a, b)]) for a, b in sorted(self._age)]

    @property
    def edge_count(self) -> int:
        return len(self._age)

    # -- serialization ---------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "nodes": [
                {
                    "id": k,
                    "y": self._pos[k].tolist(),
                    "sigma": float(self._sigma[k]),
                    "alpha": int(self._alpha[k]),
                }
                for k in range(self._n)
            ],
            "edges": [{"a": a, "b": b, "age": age} for a, b, age in self.edges()],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)


def select_winners(x, net: TopoNetwork) -> tuple[int, int, float, float]:
    """Indices of the two most similar nodes plus their CIM values.

    Ties break toward the lowest node id.
    """
    if net.node_count < 2:
        raise InsufficientNodesError("winner selection needs at least two nodes")
    sims = cim_rows(x, net.positions, net.mean_bandwidth())
    k1 = int(np.argmin(sims))
    v1 = float(sims[k1])
    sims[k1] = np.inf
    k2 = int(np.argmin(sims))
    v2 = float(sims[k2])
    return k1, k2, v1, v2


def classify_vigilance(v_k1: float, v_k2: float, threshold: float) -> VigilanceOutcome:
    """Three-way vigilance outcome for winner similarities v_k1 <= v_k2."""
    if v_k1 > v_k2:
        raise ValueError(f"winner similarities out of order: {v_k1} > {v_k2}")
    if threshold < v_k1:
        return VigilanceOutcome.NEW_NODE
    if threshold < v_k2:
        return VigilanceOutcome.FIRST_WINNER
    return VigilanceOutcome.BOTH_WINNERS


def _age_incident_edges(net: TopoNetwork, k1: int) -> None:
    degree = len(net.neighbors(k1))
    if degree == 0:
        return
    step = 1.0 / degree
    for l in net.neighbors(k1):
        key = net._key(k1, l)
        net._age[key] += step


def _pull_first_winner(net: TopoNetwork, k1: int, x) -> None:
    # Win count increments first; the position update uses the new count.
    net._alpha[k1] += 1
    net._pos[k1] += (np.asarray(x, dtype=float) - net._pos[k1]) / net._alpha[k1]


def learn_first_winner(net: TopoNetwork, k1: int, k2: int, x) -> None:
    """Refine the first winner and refresh its edge to the second winner."""
    _age_incident_edges(net, k1)
    _pull_first_winner(net, k1, x)
    net.set_edge(k1, k2, 0.0)


def learn_both_winners(net: TopoNetwork, k1: int, k2: int, x) -> None:
    """Refine both winners, then prune the first winner's stalest dissimilar edge."""
    _age_incident_edges(net, k1)
    _pull_first_winner(net, k1, x)
    # Second winner moves a tenth as far and does not gain a win.
    net._pos[k2] += (np.asarray(x, dtype=float) - net._pos[k2]) / (10.0 * net._alpha[k2])
    neigh = sorted(net.neighbors(k1))
    if neigh:
        sims = cim_rows(net.positions[k1], net.positions[neigh], net.mean_bandwidth())
        l = neigh[int(np.argmax(sims))]
        if net.edge_age(k1, l) > len(neigh):
            net.remove_edge(k1, l)
    net.set_edge(k1, k2, 0.0)


def train_ca(X, net: TopoNetwork, window: int, threshold: float) -> TopoNetwork:
    """One pass of ART training over instances in the given order.

    The first min(window, len(X)) instances only fill the bandwidth window;
    the representative bandwidth is first estimated there and refreshed at
    every multiple of ``window`` from the trailing instances. While fewer than
    two nodes exist the full vigilance test cannot run: the first instance
    after the fill becomes a node verbatim, and with a single node an instance
    either spawns the second node (dissimilar) or merges into it.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    n_x = X.shape[0]
    if n_x == 0:
        return net
    sigma = None
    fill = min(window, n_x)
    for n in range(1, n_x + 1):
        x = X[n - 1]
        if sigma is None:
            if n < fill:
                continue
            sigma = estimate_bandwidth(X[:n])
        elif n % window == 0:
            sigma = estimate_bandwidth(X[n - window : n])
        if net.node_count == 0:
            net.add_node(x, sigma)
            continue
        if net.node_count == 1:
            v1 = float(cim_rows(x, net.positions, net.mean_bandwidth())[0])
            if threshold < v1:
                net.add_node(x, sigma)
            else:
                _age_incident_edges(net, 0)
                _pull_first_winner(net, 0, x)
            continue
        k1, k2, v1, v2 = select_winners(x, net)
        outcome = classify_vigilance(v1, v2, threshold)
        if outcome is VigilanceOutcome.NEW_NODE:
            net.add_node(x, sigma)
        elif outcome is VigilanceOutcome.FIRST_WINNER:
            learn_first_winner(net, k1, k2, x)
        else:
            learn_both_winners(net, k1, k2, x)
    return net


def connected_components(net: TopoNetwork) -> np.ndarray:
    """Component label per node; labels numbered in order of first appearance."""
    n = net.node_count
    labels = np.full(n, -1, dtype=np.int64)
    current = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        stack = [start]
        labels[start] = current
        while stack:
            k = stack.pop()
            for l in net.neighbors(k):
                if labels[l] < 0:
                    labels[l] = current
                    stack.append(l)
        current += 1
    return labels


@dataclass
class AdaptiveTrainResult:
    network: TopoNetwork
    threshold: float
    passes: int
    converged: bool


def adaptive_train_ca(X, window: int, threshold: float, pop_size: int) -> AdaptiveTrainResult:
    """Train from empty, tuning the similarity threshold toward a node budget.

    Small batches (at most 1.25 * pop_size instances) train once with the
    threshold reset to 0.1. Larger batches run a pseudo-binary search over the
    threshold, at most five passes, accepting a node count within
    [0.75 * pop_size, 1.25 * pop_size]; the returned threshold seeds the next
    call.
    """
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.shape[0] == 0:
        raise ValueError("training batch is empty")
    dim = X.shape[1]
    if X.shape[0] <= 1.25 * pop_size:
        threshold = 0.1
        net = train_ca(X, TopoNetwork(dim), window, threshold)
        return AdaptiveTrainResult(net, threshold, 1, False)
    upper, lower = 1.0, 0.0
    converged = False
    passes = 0
    net = TopoNetwork(dim)
    for _ in range(5):
        net = train_ca(X, TopoNetwork(dim), window, threshold)
        passes += 1
        count = net.node_count
        if 0.75 * pop_size <= count <= 1.25 * pop_size:
            converged = True
            break
        if count < 0.75 * pop_size:
            upper = threshold
        else:
            lower = threshold
        threshold = 0.5 * (upper + lower)
    return AdaptiveTrainResult(net, threshold, passes, converged)
