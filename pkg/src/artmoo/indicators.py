"""Quality indicators: hypervolume (exact 2-D/3-D and Monte Carlo) and IGD+."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .problems import ReferenceFront


@dataclass(frozen=True)
class IndicatorResult:
    value: float
    method: str
    samples: int | None = None
    seed: int | None = None

    def __float__(self) -> float:
        return self.value


def normalize_front(F, front: ReferenceFront) -> np.ndarray:
    """Map objectives through the reference front's ideal/nadir affine transform.

    Dimensions where the front is degenerate (nadir equals ideal) map to 0.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    span = front.nadir - front.ideal
    safe = np.where(span > 0, span, 1.0)
    return np.where(span > 0, (F - front.ideal) / safe, 0.0)


def normalize_for_hv(F, front: ReferenceFront) -> np.ndarray:
    """Scale objectives onto the front's bounding box with a 10% margin.

    Uses (f - lo) / (1.1 * (nadir - lo)) with lo = min(ideal, 0), so a fixed
    hypervolume reference like (1.5, ..., 1.5) measures coverage comparably
    across problems of very different objective scales.
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    lo = np.minimum(front.ideal, 0.0)
    span = 1.1 * (front.nadir - lo)
    safe = np.where(span > 0, span, 1.0)
    return np.where(span > 0, (F - lo) / safe, 0.0)


def _hv_exact_2d(F: np.ndarray, q: np.ndarray) -> float:
    order = np.lexsort((F[:, 1], F[:, 0]))
    F = F[order]
    area = 0.0
    ceiling = q[1]
    for f1, f2 in F:
        if f2 < ceiling:
            area += (q[0] - f1) * (ceiling - f2)
            ceiling = f2
    return area


def _hv_exact_3d(F: np.ndarray, q: np.ndarray) -> float:
    # sweep the third axis: each slab contributes its 2-D hypervolume times depth
    levels = np.unique(F[:, 2])
    volume = 0.0
    for i, z in enumerate(levels):
        depth = (levels[i + 1] if i + 1 < len(levels) else q[2]) - z
        if depth <= 0:
            continue
        slab = F[F[:, 2] <= z][:, :2]
        volume += _hv_exact_2d(slab, q[:2]) * depth
    return volume


def _hv_monte_carlo(F: np.ndarray, q: np.ndarray, samples: int, seed: int) -> float:
    rng = np.random.default_rng(seed)
    box = float(np.prod(q))
    hits = 0
    chunk = 1 << 14
    remaining = samples
    while remaining > 0:
        take = min(chunk, remaining)
        Z = rng.random((take, q.size)) * q
        dominated = (F[None, :, :] <= Z[:, None, :]).all(axis=-1).any(axis=-1)
        hits += int(dominated.sum())
        remaining -= take
    return box * hits / samples


def hypervolume(F, q, mode: str = "auto", samples: int = 10**6, seed: int = 0) -> IndicatorResult:
    """Hypervolume dominated by F within the box [0, q].

    Points not strictly better than q in every coordinate contribute nothing.
    ``mode`` is "exact" (M <= 3), "monte-carlo", or "auto".
    """
    F = np.atleast_2d(np.asarray(F, dtype=float))
    q = np.asarray(q, dtype=float)
    M = q.size
    contributing = F[(F < q).all(axis=1)]
    if mode == "auto":
        mode = "exact" if M <= 3 else "monte-carlo"
    if contributing.size == 0:
        return IndicatorResult(0.0, mode)
    if mode == "exact":
        if M == 1:
            value = float(q[0] - contributing.min())
        elif M == 2:
            value = _hv_exact_2d(contributing, q)
        elif M == 3:
            value = _hv_exact_3d(contributing, q)
        else:
            raise ValueError("exact hypervolume supports at most three objectives")
        return IndicatorResult(float(value), "exact")
    if mode == "monte-carlo":
        value = _hv_monte_carlo(contributing, q, samples, seed)
        return IndicatorResult(float(value), "monte-carlo", samples=samples, seed=seed)
    raise ValueError(f"unknown hypervolume mode {mode!r}")


def igd_plus(F, ref) -> IndicatorResult:
    """Mean, over reference points, of the dominance-clamped distance to F."""
    R = ref.points if isinstance(ref, ReferenceFront) else np.atleast_2d(np.asarray(ref, dtype=float))
    F = np.atleast_2d(np.asarray(F, dtype=float))
    if R.size == 0:
        raise ValueError("reference set is empty")
    if F.size == 0:
        raise ValueError("population is empty")
    # accumulate squared clamped gaps one objective at a time so the summation
    # order matches a scalar transcription exactly
    sq = np.zeros((R.shape[0], F.shape[0]))
    for m in range(F.shape[1]):
        gap = np.maximum(F[None, :, m] - R[:, None, m], 0.0)
        sq += gap * gap
    mins = np.sqrt(sq).min(axis=1)
    return IndicatorResult(float(np.mean(mins)), "exact")
