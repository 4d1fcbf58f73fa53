"""Core geometric value types: points, unit vectors, balls, tolerances."""

from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .errors import DimensionMismatch

Vec = np.ndarray

TOL_UNIT_DEFAULT = 1e-12


def as_point(coords, dim: int | None = None) -> Vec:
    """Coerce to a finite float vector, optionally checking the dimension."""
    p = np.atleast_1d(np.asarray(coords, dtype=float))
    if p.ndim != 1:
        raise ValueError(f"point must be a flat coordinate vector, got shape {p.shape}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    if dim is not None and p.size != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {p.size}")
    return p


def unit_vector(v, tol: float = TOL_UNIT_DEFAULT) -> Vec:
    """Normalize ``v``; raise on a (near-)zero vector."""
    d = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(d))
    if n <= tol:
        raise ValueError("zero direction vector")
    return d / n


def is_unit(v, tol: float = TOL_UNIT_DEFAULT) -> bool:
    return abs(float(np.linalg.norm(v)) - 1.0) <= tol


@dataclass(frozen=True)
class Ball:
    """A ball ``{p : |p - center| < radius}`` (open) or ``<=`` (closed)."""

    center: Vec
    radius: float
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "center", as_point(self.center))
        if not (self.radius >= 0.0 and np.isfinite(self.radius)):
            raise ValueError(f"ball radius must be finite and >= 0, got {self.radius}")

    @property
    def dim(self) -> int:
        return self.center.size

    def contains(self, p, slack: float = 0.0) -> bool:
        d = float(np.linalg.norm(as_point(p, self.dim) - self.center))
        if self.closed:
            return d <= self.radius + slack
        return d < self.radius - slack

    def to_dict(self) -> dict:
        return {
            "center": [float(c) for c in self.center],
            "radius": float(self.radius),
            "closed": bool(self.closed),
        }


@dataclass
class Tolerances:
    """Numerical knobs shared by oracles, condition checks and coverings.

    ``tol_emptiness`` is the slack allowed in ball-emptiness tests,
    ``tol_boundary`` the bracket width target for boundary bisection and the
    on-boundary test, ``probe_budget`` the number of deterministic probes for
    interior searches.
    """

    tol_unit: float = 1e-12
    tol_emptiness: float = 1e-9
    tol_boundary: float = 1e-9
    max_bisection_iters: int = 80
    probe_budget: int = 64

    def __post_init__(self):
        for name in ("tol_unit", "tol_emptiness", "tol_boundary"):
            if not getattr(self, name) > 0.0:
                raise ValueError(f"{name} must be strictly positive")
        if self.max_bisection_iters < 32:
            raise ValueError("max_bisection_iters must be >= 32")
        if self.probe_budget < 1:
            raise ValueError("probe_budget must be strictly positive")

    @classmethod
    def from_dict(cls, d: dict | None) -> "Tolerances":
        return cls(**(d or {}))

    def to_dict(self) -> dict:
        return asdict(self)
