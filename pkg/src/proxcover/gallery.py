"""Named example sets and the regular-simplex ball arrangement.

``simplex_centers(n, r)`` places n+1 open r-balls at the vertices of a
regular simplex around the origin; all centers share the norm
``n r / sqrt(n^2 - 1)`` and the largest closed ball through the origin that
fits between/inside them has radius ``n r / (2 sqrt(n^2 - 1))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SceneError
from .geometry import Tolerances
from .oracles import (ClosedBall, ClosedHalfspace, ComplementOfOpenBalls,
                      Hyperplane, PinchedSlabWhiskers, SetOracle,
                      make_example1, make_example2)

GALLERY_IDS = ("example1", "example2", "example3_surrogate", "disk", "line",
               "halfspace", "complement_of_balls", "simplex_complement")


@dataclass(frozen=True)
class SimplexConfig:
    """n+1 ball centers forming a regular simplex around the origin."""

    n: int
    r: float
    centers: np.ndarray  # shape (n+1, n)

    @property
    def center_norm(self) -> float:
        return self.n * self.r / math.sqrt(self.n * self.n - 1.0)


def simplex_centers(n: int, r: float) -> SimplexConfig:
    """Centers ``C_i = -(n r / sqrt(n(n-1))) (sqrt(i/(i+1)) e_i - sum_{k>i} e_k / sqrt(k(k+1)))``.

    ``e_0`` is the zero vector by convention.  The construction is validated:
    all norms equal ``n r / sqrt(n^2 - 1)`` and all pairwise distances agree.
    """
    if n < 2:
        raise ValueError("the simplex arrangement needs n >= 2")
    if r <= 0:
        raise ValueError("ball radius must be strictly positive")
    scale = -n * r / math.sqrt(n * (n - 1.0))
    centers = np.zeros((n + 1, n))
    for i in range(n + 1):
        v = np.zeros(n)
        if i >= 1:
            v[i - 1] = math.sqrt(i / (i + 1.0))
        for k in range(i + 1, n + 1):
            v[k - 1] = -1.0 / math.sqrt(k * (k + 1.0))
        centers[i] = scale * v

    expected = n * r / math.sqrt(n * n - 1.0)
    norms = np.linalg.norm(centers, axis=1)
    if not np.allclose(norms, expected, rtol=1e-12, atol=0.0):
        raise AssertionError(f"simplex center norms {norms} != {expected}")
    dists = np.linalg.norm(centers[:, None, :] - centers[None, :, :], axis=2)
    off = dists[~np.eye(n + 1, dtype=bool)]
    if not np.allclose(off, off[0], rtol=1e-12, atol=0.0):
        raise AssertionError("simplex pairwise distances are not all equal")
    return SimplexConfig(n=n, r=float(r), centers=centers)


def face_pinch_points(config: SimplexConfig) -> np.ndarray:
    """The n+1 face centroids ``F_j = -C_j / n``.

    Each F_j lies at distance exactly r from the n centers of its face, i.e.
    on all their spheres at once: the union of the open balls pinches shut
    there.  The identity is asserted, not assumed.
    """
    pinches = -config.centers / config.n
    for j in range(config.n + 1):
        for i in range(config.n + 1):
            if i == j:
                continue
            d = float(np.linalg.norm(pinches[j] - config.centers[i]))
            if abs(d - config.r) > 1e-10 * max(1.0, config.r):
                raise AssertionError(
                    f"pinch point {j} is at distance {d} from center {i}, expected {config.r}")
    return pinches


def make_gallery_set(set_id: str, params: dict | None = None,
                     window=None, tol: Tolerances | None = None) -> SetOracle:
    """Construct one of the named sets; see GALLERY_IDS."""
    params = params or {}
    if set_id == "example1":
        return make_example1(window=window, tol=tol)
    if set_id == "example2":
        return make_example2(window=window, tol=tol)
    if set_id == "example3_surrogate":
        return PinchedSlabWhiskers(window=window, tol=tol)
    if set_id == "disk":
        return ClosedBall(params.get("center", [0.0, 0.0]),
                          params.get("radius", 1.0), window=window, tol=tol)
    if set_id == "line":
        return Hyperplane(params.get("normal", [0.0, 1.0]),
                          params.get("offset", 0.0),
                          window=window or [(-3.0, 3.0), (-3.0, 3.0)], tol=tol)
    if set_id == "halfspace":
        return ClosedHalfspace(params.get("normal", [0.0, 1.0]),
                               params.get("offset", 0.0),
                               window=window or [(-4.0, 4.0), (-4.0, 4.0)], tol=tol)
    if set_id == "complement_of_balls":
        centers = params.get("centers", [[-0.6, 0.0], [0.6, 0.0]])
        radii = params.get("radii", [1.0, 1.0])
        return ComplementOfOpenBalls(centers, radii, window=window, tol=tol)
    if set_id == "simplex_complement":
        cfg = simplex_centers(params.get("n", 2), params.get("radius", 1.0))
        return ComplementOfOpenBalls(cfg.centers, [cfg.r] * (cfg.n + 1),
                                     window=window, tol=tol)
    raise SceneError(f"unknown gallery id '{set_id}'")
