"""Scalable box-constrained benchmark problems with analytic Pareto-front samplers.

Covers DTLZ2, DTLZ7, and the first seven MaF problems (MaF7 is DTLZ7 with the
suite's distance-variable count). Decision vectors live in [0, 1]^D with
D = M + k - 1; the first M - 1 variables control position on the front and the
rest control distance to it.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from math import ceil, pi

import numpy as np

from .core import nondominated_mask
from .refvec import simplex_lattice


@dataclass(frozen=True)
class Problem:
    name: str
    n_obj: int
    n_var: int
    lower: np.ndarray = field(repr=False)
    upper: np.ndarray = field(repr=False)

    @property
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self.lower, self.upper

    def evaluate(self, x) -> np.ndarray:
        """Objective vector for one decision vector."""
        x = np.asarray(x, dtype=float)
        if x.shape != (self.n_var,):
            raise ValueError(f"{self.name} expects {self.n_var} variables, got shape {x.shape}")
        return self.evaluate_batch(x[None, :])[0]

    def evaluate_batch(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != self.n_var:
            raise ValueError(f"{self.name} expects {self.n_var} variables, got {X.shape[1]}")
        return _KERNELS[self.name](X, self.n_obj)


# distance-variable counts by suite convention
_K_DEFAULT = 10
_K_BY_NAME = {"dtlz7": 20, "maf7": 20}


def available_problems() -> list[str]:
    return sorted(_KERNELS)


def make_problem(name: str, n_obj: int, k: int | None = None) -> Problem:
    name = name.lower()
    if name not in _KERNELS:
        raise ValueError(f"unknown problem {name!r}; available: {', '.join(available_problems())}")
    if n_obj < 2:
        raise ValueError("problems need at least two objectives")
    if k is None:
        k = _K_BY_NAME.get(name, _K_DEFAULT)
    n_var = n_obj + k - 1
    return Problem(name, n_obj, n_var, np.zeros(n_var), np.ones(n_var))


# -- objective kernels (vectorized over rows) ---------------------------------------


def _trig_terms(T: np.ndarray) -> np.ndarray:
    """DTLZ2-style products: col m is prod_{i<=M-1-m} cos(pi/2 T_i) * sin(pi/2 T_{M-1-m}).

    T holds the M-1 position values in [0, 1]; the result has M columns.
    """
    n, m_minus_1 = T.shape
    M = m_minus_1 + 1
    C = np.cos(0.5 * pi * T)
    S = np.sin(0.5 * pi * T)
    cp = np.cumprod(np.hstack([np.ones((n, 1)), C]), axis=1)  # cp[:, j] = C_0..C_{j-1}
    out = np.empty((n, M))
    out[:, 0] = cp[:, M - 1]
    for m in range(2, M + 1):
        out[:, m - 1] = cp[:, M - m] * S[:, M - m]
    return out


def _inverted_linear_terms(T: np.ndarray) -> np.ndarray:
    """Linear products 1 - prod_{i<=M-1-m} T_i * (1 - T_{M-1-m} for later columns)."""
    n, m_minus_1 = T.shape
    M = m_minus_1 + 1
    cp = np.cumprod(np.hstack([np.ones((n, 1)), T]), axis=1)
    out = np.empty((n, M))
    out[:, 0] = 1.0 - cp[:, M - 1]
    for m in range(2, M + 1):
        out[:, m - 1] = 1.0 - cp[:, M - m] * (1.0 - T[:, M - m])
    return out


def _g_sphere(Xd: np.ndarray) -> np.ndarray:
    return ((Xd - 0.5) ** 2).sum(axis=1)


def _g_multimodal(Xd: np.ndarray) -> np.ndarray:
    return 100.0 * (Xd.shape[1] + ((Xd - 0.5) ** 2 - np.cos(20.0 * pi * (Xd - 0.5))).sum(axis=1))


def _dtlz2(X: np.ndarray, M: int) -> np.ndarray:
    g = _g_sphere(X[:, M - 1 :])
    return (1.0 + g)[:, None] * _trig_terms(X[:, : M - 1])


def _dtlz7(X: np.ndarray, M: int) -> np.ndarray:
    k = X.shape[1] - M + 1
    g = 1.0 + 9.0 / k * X[:, M - 1 :].sum(axis=1)
    F = np.empty((X.shape[0], M))
    F[:, : M - 1] = X[:, : M - 1]
    h = M - (F[:, : M - 1] / (1.0 + g)[:, None] * (1.0 + np.sin(3.0 * pi * F[:, : M - 1]))).sum(axis=1)
    F[:, M - 1] = (1.0 + g) * h
    return F


def _maf1(X: np.ndarray, M: int) -> np.ndarray:
    g = _g_sphere(X[:, M - 1 :])
    return (1.0 + g)[:, None] * _inverted_linear_terms(X[:, : M - 1])


def _maf2(X: np.ndarray, M: int) -> np.ndarray:
    n, D = X.shape
    chunk = (D - M + 1) // M
    g = np.empty((n, M))
    for m in range(M):
        start = (M - 1) + m * chunk
        stop = start + chunk if m < M - 1 else D
        shifted = X[:, start:stop] / 2.0 + 0.25
        g[:, m] = ((shifted - 0.5) ** 2).sum(axis=1)
    theta = X[:, : M - 1] / 2.0 + 0.25
    return (1.0 + g) * _trig_terms(theta)


def _maf3(X: np.ndarray, M: int) -> np.ndarray:
    g = _g_multimodal(X[:, M - 1 :])
    F = (1.0 + g)[:, None] * _trig_terms(X[:, : M - 1])
    F[:, : M - 1] **= 4
    F[:, M - 1] **= 2
    return F


def _maf4(X: np.ndarray, M: int) -> np.ndarray:
    g = _g_multimodal(X[:, M - 1 :])
    F = (1.0 + g)[:, None] * (1.0 - _trig_terms(X[:, : M - 1]))
    return F * (2.0 ** np.arange(1, M + 1))


def _maf5(X: np.ndarray, M: int) -> np.ndarray:
    g = _g_sphere(X[:, M - 1 :])
    F = (1.0 + g)[:, None] * _trig_terms(X[:, : M - 1] ** 100)
    return F**4 * (2.0 ** np.arange(M, 0, -1))


def _maf6(X: np.ndarray, M: int) -> np.ndarray:
    # degenerate front: only the first position variable stays free
    g = _g_sphere(X[:, M - 1 :])
    T = X[:, : M - 1].copy()
    if M > 2:
        T[:, 1:] = (1.0 + 2.0 * g[:, None] * T[:, 1:]) / (2.0 + 2.0 * g[:, None])
    return (1.0 + 100.0 * g)[:, None] * _trig_terms(T)


_KERNELS = {
    "dtlz2": _dtlz2,
    "dtlz7": _dtlz7,
    "maf1": _maf1,
    "maf2": _maf2,
    "maf3": _maf3,
    "maf4": _maf4,
    "maf5": _maf5,
    "maf6": _maf6,
    "maf7": _dtlz7,
}


# -- reference fronts -----------------------------------------------------------------


@dataclass(frozen=True)
class ReferenceFront:
    """True-front sample, min-max normalized, plus the raw ideal/nadir bounds."""

    name: str
    points: np.ndarray
    ideal: np.ndarray
    nadir: np.ndarray

    def __len__(self) -> int:
        return len(self.points)


def _normalize(name: str, raw: np.ndarray) -> ReferenceFront:
    ideal = raw.min(axis=0)
    nadir = raw.max(axis=0)
    span = nadir - ideal
    safe = np.where(span > 0, span, 1.0)
    points = np.where(span > 0, (raw - ideal) / safe, 0.0)
    return ReferenceFront(name, points, ideal, nadir)


def _sphere_lattice(M: int, target: int) -> np.ndarray:
    h = 1
    while len(simplex_lattice(M, h)) < target:
        h += 1
    W = simplex_lattice(M, h)
    return W / np.linalg.norm(W, axis=1, keepdims=True)


def _grid(dims: int, target: int) -> np.ndarray:
    """Regular grid over [0, 1]^dims with at least ``target`` points."""
    per_dim = max(2, ceil(target ** (1.0 / dims)))
    axes = [np.linspace(0.0, 1.0, per_dim)] * dims
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def reference_front(problem: Problem, target_count: int = 1000) -> ReferenceFront:
    """Sample the true Pareto front analytically and min-max normalize it."""
    if target_count < problem.n_obj:
        raise ValueError("target_count must be at least the number of objectives")
    M = problem.n_obj
    name = problem.name
    if name == "dtlz2":
        raw = _sphere_lattice(M, target_count)
    elif name == "maf1":
        W = simplex_lattice(M, _lattice_divisions_for(M, target_count))
        raw = 1.0 - W
    elif name == "maf2":
        T = _grid(M - 1, target_count)
        raw = _trig_terms(T / 2.0 + 0.25)
    elif name == "maf3":
        raw = _sphere_lattice(M, target_count)
        raw = np.hstack([raw[:, : M - 1] ** 4, raw[:, M - 1 :] ** 2])
    elif name == "maf4":
        raw = (1.0 - _sphere_lattice(M, target_count)) * (2.0 ** np.arange(1, M + 1))
    elif name == "maf5":
        raw = _sphere_lattice(M, target_count) ** 4 * (2.0 ** np.arange(M, 0, -1))
    elif name == "maf6":
        T = np.zeros((target_count, M - 1))
        T[:, 0] = np.linspace(0.0, 1.0, target_count)
        if M > 2:
            T[:, 1:] = 0.5
        raw = _trig_terms(T)
    elif name in ("dtlz7", "maf7"):
        # mixed disconnected surface: enumerate the g = 1 slice, keep the
        # non-dominated segments
        T = _grid(M - 1, 4 * target_count)
        F = np.empty((len(T), M))
        F[:, : M - 1] = T
        h = M - (T / 2.0 * (1.0 + np.sin(3.0 * pi * T))).sum(axis=1)
        F[:, M - 1] = 2.0 * h
        raw = F[nondominated_mask(F)]
    else:
        raise ValueError(f"no reference front sampler for {name!r}")
    return _normalize(name, raw)


def _lattice_divisions_for(M: int, target: int) -> int:
    h = 1
    while len(simplex_lattice(M, h)) < target:
        h += 1
    return h


def front_to_csv(front: ReferenceFront, path) -> None:
    """Write normalized front points, one per row."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow([f"f{m + 1}" for m in range(front.points.shape[1])])
        for row in front.points:
            writer.writerow([repr(float(v)) for v in row])
