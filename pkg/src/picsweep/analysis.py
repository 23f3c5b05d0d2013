"""Spectral helpers for sweep results: extrema and free spectral range."""

from __future__ import annotations

import numpy as np


def _refine(x: np.ndarray, y: np.ndarray, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Parabolic vertex through each extremum and its two neighbours."""
    y0, y1, y2 = y[idx - 1], y[idx], y[idx + 1]
    x0, x1, x2 = x[idx - 1], x[idx], x[idx + 1]
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    b = (x2**2 * (y0 - y1) + x1**2 * (y2 - y0) + x0**2 * (y1 - y2)) / denom
    flat = np.abs(a) < np.finfo(float).tiny
    xv = np.where(flat, x1, -b / np.where(flat, 1.0, 2 * a))
    c = y1 - a * x1**2 - b * x1
    yv = np.where(flat, y1, a * xv**2 + b * xv + c)
    return xv, yv


def local_maxima(x, y, min_height: float = -np.inf) -> tuple[np.ndarray, np.ndarray]:
    """Interior local maxima of ``y(x)`` at or above ``min_height``, sorted by x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    order = np.argsort(x)
    x, y = x[order], y[order]
    idx = np.where((y[1:-1] > y[:-2]) & (y[1:-1] >= y[2:]))[0] + 1
    idx = idx[y[idx] >= min_height]
    if idx.size == 0:
        return np.empty(0), np.empty(0)
    return _refine(x, y, idx)


def local_minima(x, y, max_height: float = np.inf) -> tuple[np.ndarray, np.ndarray]:
    """Interior local minima of ``y(x)`` at or below ``max_height``, sorted by x."""
    xv, yv = local_maxima(x, -np.asarray(y, dtype=float), -max_height)
    return xv, -yv


def free_spectral_range(positions, near: float) -> tuple[float, float]:
    """Spacing of the adjacent pair whose midpoint is closest to ``near``.

    Returns ``(spacing, midpoint)``.
    """
    pos = np.sort(np.asarray(positions, dtype=float))
    if pos.size < 2:
        raise ValueError("need at least two extrema")
    mids = 0.5 * (pos[1:] + pos[:-1])
    k = int(np.argmin(np.abs(mids - near)))
    return float(pos[k + 1] - pos[k]), float(mids[k])
