"""Deterministic low-discrepancy sampling helpers.

Everything here is a pure function of its arguments (including the seed), so
repeated runs produce byte-identical output.
"""

from __future__ import annotations

import numpy as np
from scipy.stats import qmc
from scipy.special import ndtri

_GOLDEN = 0.6180339887498949


def seed_offset(seed: int) -> float:
    """A deterministic phase in [0, 1); seed 0 maps to 0 (grids keep endpoints)."""
    return float((seed * _GOLDEN) % 1.0)


def halton(count: int, dim: int, seed: int = 0) -> np.ndarray:
    """Unscrambled Halton points in [0,1)^dim, fast-forwarded by the seed."""
    eng = qmc.Halton(d=dim, scramble=False)
    if seed:
        eng.fast_forward(int(seed) % 65536)
    return eng.random(count)


def unit_directions(count: int, dim: int, seed: int = 0) -> np.ndarray:
    """Quasi-uniform unit directions, axis directions first.

    The 2*dim signed axis directions are always included (budget permitting);
    the remainder comes from Gaussian-mapped Halton points.
    """
    if count < 1:
        raise ValueError("direction count must be >= 1")
    if dim == 1:
        base = np.array([[1.0], [-1.0]])
        return base[: max(count, 1)] if count <= 2 else base
    axes = np.vstack([np.eye(dim), -np.eye(dim)])
    if count <= axes.shape[0]:
        return axes[:count]
    extra = count - axes.shape[0]
    u = halton(extra, dim, seed)
    g = ndtri(np.clip(u, 1e-12, 1 - 1e-12))
    norms = np.linalg.norm(g, axis=1)
    norms[norms == 0.0] = 1.0
    return np.vstack([axes, g / norms[:, None]])


def ball_points(count: int, dim: int, seed: int = 0) -> np.ndarray:
    """Quasi-uniform points of the open unit ball (radius strictly < 1)."""
    u = halton(count, dim + 1, seed)
    g = ndtri(np.clip(u[:, :dim], 1e-12, 1 - 1e-12))
    norms = np.linalg.norm(g, axis=1)
    norms[norms == 0.0] = 1.0
    dirs = g / norms[:, None]
    radii = np.clip(u[:, dim], 0.0, 1.0 - 1e-12) ** (1.0 / dim)
    return dirs * radii[:, None]


def window_points(count: int, window, seed: int = 0) -> np.ndarray:
    """Quasi-uniform points of an axis-aligned box ``[[lo, hi], ...]``."""
    win = np.asarray(window, dtype=float)
    u = halton(count, win.shape[0], seed)
    return win[:, 0] + u * (win[:, 1] - win[:, 0])


def split_budget(budget: int, weights) -> list[int]:
    """Largest-remainder split of ``budget`` proportional to ``weights``."""
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or w.sum() <= 0:
        w = np.ones_like(w)
    shares = budget * w / w.sum()
    counts = np.floor(shares).astype(int)
    rem = budget - int(counts.sum())
    order = np.argsort(-(shares - counts), kind="stable")
    for i in range(rem):
        counts[order[i % len(counts)]] += 1
    return [int(c) for c in counts]
