"""Correntropy-induced metric (CIM) and the Gaussian-kernel bandwidth rule."""

from __future__ import annotations

import numpy as np

# Zero-variance windows occur on converged populations; the floor keeps the
# metric defined (a zero bandwidth would make the kernel degenerate).
SIGMA_FLOOR = 1e-6


def cim(x, y, sigma: float) -> float:
    """CIM dissimilarity between two vectors, in [0, 1].

    Computed as sqrt(1 - mean_i exp(-(x_i - y_i)^2 / (2 sigma^2))); zero iff
    the vectors coincide.
    """
    if sigma <= 0:
        raise ValueError(f"kernel bandwidth must be positive, got {sigma}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"vectors differ in length: {x.shape} vs {y.shape}")
    kernel = np.exp(-((x - y) ** 2) / (2.0 * sigma * sigma))
    return float(np.sqrt(max(1.0 - kernel.mean(), 0.0)))


def cim_rows(x, Y: np.ndarray, sigma: float) -> np.ndarray:
    """CIM of one vector against each row of Y."""
    if sigma <= 0:
        raise ValueError(f"kernel bandwidth must be positive, got {sigma}")
    diff = Y - np.asarray(x, dtype=float)
    kernel = np.exp(-(diff * diff) / (2.0 * sigma * sigma))
    return np.sqrt(np.maximum(1.0 - kernel.mean(axis=1), 0.0))


def estimate_bandwidth(window: np.ndarray) -> float:
    """Representative kernel bandwidth from a window of instances.

    Per-dimension bandwidths follow the Gaussian-kernel plug-in rule
    (4 / (2 + d))^(1/(4+d)) * std_j * n^(-1/(4+d)) with the population
    standard deviation; the median over dimensions is returned, floored at
    SIGMA_FLOOR for degenerate windows.
    """
    window = np.asarray(window, dtype=float)
    if window.ndim == 1:
        window = window[:, None]
    n, d = window.shape
    std = window.std(axis=0)
    per_dim = (4.0 / (2.0 + d)) ** (1.0 / (4.0 + d)) * std * float(n) ** (-1.0 / (4.0 + d))
    return float(max(np.median(per_dim), SIGMA_FLOOR))
