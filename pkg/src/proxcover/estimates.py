"""Computable regularity quantities: thin-boundary separation and radius bound.

``r_S`` is the distance between the boundary of cl(int S) and the thin part
of the boundary of S.  When it is positive, S is prox-regular with radius at
least ``min(rho, r_prime, r_S / 4)`` given a prox-regularity radius ``rho``
for cl(int S) and an extended-condition radius ``r_prime`` for S.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import ProxcoverError
from .oracles import SetOracle, UnionOracle
from .conditions import check_condition


@dataclass
class RegularityEstimate:
    rho: float
    r_prime: float
    r_S: float
    r_out: float | None = None

    def to_json_dict(self) -> dict:
        return {
            "rho": float(self.rho),
            "r_prime": float(self.r_prime),
            "r_S": "inf" if math.isinf(self.r_S) else float(self.r_S),
            "r_estimate": None if self.r_out is None else float(self.r_out),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _thin_boundary_samples(oracle: SetOracle, budget: int, seed: int) -> np.ndarray:
    """Samples of (bdry S) minus bdry(int S)."""
    if isinstance(oracle, UnionOracle):
        thin = oracle.thin_components
        if not thin:
            return np.empty((0, oracle.dim))
        out = []
        for part in thin:
            pts = part.boundary_sample(max(1, budget // len(thin)), seed)
            for q in pts:
                if not oracle.is_interior(q):
                    out.append(q)
        return np.asarray(out) if out else np.empty((0, oracle.dim))
    if oracle.has_interior and oracle.regular_closed:
        return np.empty((0, oracle.dim))
    pts = oracle.boundary_sample(budget, seed)
    keep = [q for q in pts if oracle.classify_boundary(q) != "interior_boundary"]
    return np.asarray(keep) if keep else np.empty((0, oracle.dim))


def _refine_pair(closure: SetOracle, thin_parts, a: np.ndarray, b: np.ndarray,
                 iters: int = 60) -> float:
    """Alternating nearest-point projections between the two boundary pieces."""
    best = float(np.linalg.norm(a - b))
    for _ in range(iters):
        try:
            a_new = closure.project_to_boundary(b)
        except NotImplementedError:
            break
        b_candidates = [part.project(a_new) for part in thin_parts]
        b_new = min(b_candidates,
                    key=lambda q: (float(np.linalg.norm(a_new - q)), tuple(q)))
        d = float(np.linalg.norm(a_new - b_new))
        if d >= best - 1e-15:
            best = min(best, d)
            break
        best, a, b = d, a_new, b_new
    return best


def r_S_distance(oracle: SetOracle, boundary_budget: int = 4000, seed: int = 0,
                 refine: bool = True) -> float:
    """Distance between bdry(cl(int S)) and the thin boundary of S.

    Estimated as the minimum pairwise distance over boundary samples, then
    locally tightened by alternating projections when the scene exposes the
    component structure.  Returns +inf when the thin boundary is empty.
    """
    closure = oracle.closure_of_interior()
    if closure is None:
        raise ProxcoverError("r_S needs a closure-of-interior companion")
    thin = _thin_boundary_samples(oracle, boundary_budget, seed)
    if thin.shape[0] == 0:
        return math.inf
    closure_pts = closure.boundary_sample(boundary_budget, seed)
    if closure_pts.shape[0] == 0:
        return math.inf
    tree = cKDTree(closure_pts)
    dists, idx = tree.query(thin)
    k = int(np.argmin(dists))
    best = float(dists[k])
    if refine and isinstance(oracle, UnionOracle) and oracle.thin_components:
        best = min(best, _refine_pair(closure, oracle.thin_components,
                                      closure_pts[idx[k]], thin[k]))
    return best


def prox_radius_estimate(rho: float, r_prime: float, r_S: float) -> float:
    """``min(rho, r_prime, r_S / 4)``; every input must be strictly positive."""
    if rho <= 0 or r_prime <= 0 or r_S <= 0:
        raise ValueError("rho, r_prime and r_S must all be strictly positive")
    return min(rho, r_prime, r_S / 4.0)


def estimate_report(oracle: SetOracle, rho: float, r_prime: float,
                    boundary_budget: int = 4000, seed: int = 0) -> RegularityEstimate:
    r_s = r_S_distance(oracle, boundary_budget, seed)
    r_out = None
    if rho > 0 and r_prime > 0 and r_s > 0:
        r_out = prox_radius_estimate(rho, r_prime, r_s)
    return RegularityEstimate(rho=rho, r_prime=r_prime, r_S=r_s, r_out=r_out)


def certify_prox_radius(oracle: SetOracle, rho_hi: float,
                        boundary_budget: int = 500, normal_budget: int = 8,
                        seed: int = 0, steps: int = 10) -> float:
    """Largest sampled-certified prox-regularity radius, by bisection on rho."""
    lo, hi = 0.0, rho_hi
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if mid <= 0:
            break
        report = check_condition(oracle, "prox_regular", mid,
                                 boundary_budget, normal_budget, seed)
        if report.passed:
            lo = mid
        else:
            hi = mid
    return lo
