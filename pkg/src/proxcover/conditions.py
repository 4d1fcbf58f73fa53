"""Proximal-normal sampling and sphere-condition verifiers.

A unit direction ``z`` at a boundary point ``x`` is *realized by an r-sphere*
when the open ball of radius r tangent at x in direction z misses the set.
Three conditions are checked on boundary samples:

* ``exterior``      - every boundary point has at least one realized normal;
* ``extended``      - interior-adjacent boundary points need one realized
                      normal, thin boundary points need all of them realized;
* ``prox_regular``  - all normals at all boundary points are realized.

Verdicts are "pass on the drawn samples": a failing report carries explicit
witnesses, a passing one certifies nothing between samples.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .geometry import Tolerances, Vec, as_point, unit_vector
from .oracles import INTERIOR_BOUNDARY, SetOracle
from .sampling import unit_directions

CONDITIONS = ("exterior", "extended", "prox_regular")

#: factor-2 certification cap for the realized-radius doubling search
_DOUBLING_STEPS = 20


@dataclass
class ProximalNormalCandidate:
    """A unit proximal-normal direction with its realization evidence."""

    base: Vec
    dir: Vec
    sigma: float | None = None
    realized_radius: float | None = None


@dataclass
class Witness:
    point: Vec
    dir: Vec | None
    reason: str
    sample_index: int

    def to_json_dict(self) -> dict:
        return {
            "point": [float(c) for c in self.point],
            "dir": None if self.dir is None else [float(c) for c in self.dir],
            "reason": self.reason,
        }


@dataclass
class ConditionReport:
    condition: str
    radius: float
    samples_checked: int
    passed: bool
    witnesses: list[Witness] = field(default_factory=list)
    seed: int = 0
    thin_not_refuted: int = 0

    def to_json_dict(self) -> dict:
        return {
            "condition": self.condition,
            "radius": float(self.radius),
            "samples": int(self.samples_checked),
            "pass": bool(self.passed),
            "witnesses": [w.to_json_dict() for w in self.witnesses],
            "seed": int(self.seed),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def realized_by_sphere(oracle: SetOracle, x, zeta, r: float) -> bool:
    """True iff the open r-ball tangent at x in direction zeta misses the set.

    Every condition check reduces to this primitive: the ball is empty iff
    the set's distance from the ball center is at least r (up to slack).
    """
    if r <= 0:
        raise ValueError("radius must be strictly positive")
    x = as_point(x, oracle.dim)
    z = unit_vector(zeta, oracle.tol.tol_unit)
    slack = oracle.tol.tol_emptiness * max(1.0, r)
    return oracle.distance(x + r * z) >= r - slack


def _certify_radius(oracle: SetOracle, x: Vec, z: Vec, t0: float) -> float | None:
    """Largest radius of the form t0 * 2^k realized at x, or None/inf."""
    if not realized_by_sphere(oracle, x, z, t0):
        return None
    best = t0
    for _ in range(_DOUBLING_STEPS):
        if not realized_by_sphere(oracle, x, z, best * 2.0):
            return best
        best *= 2.0
    return math.inf  # realized at the cap: treated as realized at every radius


def sample_proximal_normals(oracle: SetOracle, x, budget: int = 16, seed: int = 0,
                            certify: bool = True) -> list[ProximalNormalCandidate]:
    """Unit proximal-normal candidates at a boundary point.

    Analytic oracles return their exact generators.  Otherwise directions
    ``z`` are kept when the probe ``x + t z`` projects back onto x; each kept
    direction is then refined through its projection foot.  With ``certify``
    a doubling search pins ``realized_radius`` to factor-2 accuracy (``inf``
    when the search tops out, i.e. the normal looks realized at every
    radius).  The list may be empty: some boundary points carry no nonzero
    proximal normal at all.
    """
    if budget < 1:
        raise ValueError("normal budget must be >= 1")
    x = as_point(x, oracle.dim)
    t0 = 10.0 * oracle.tol.tol_boundary

    dirs: list[Vec] = []
    analytic = oracle.normal_directions(x) if oracle.analytic_normals else None
    if analytic is not None:
        dirs = [unit_vector(d) for d in analytic]
    else:
        probes = unit_directions(budget, oracle.dim, seed)
        for d in probes:
            q = x + t0 * d
            foot = oracle.project(q)
            if np.linalg.norm(foot - x) > 0.25 * t0:
                continue
            v = q - foot
            n = float(np.linalg.norm(v))
            if n <= 0.0:
                continue
            z = v / n
            foot2 = oracle.project(x + t0 * z)
            if np.linalg.norm(foot2 - x) > 1e-3 * t0:
                continue
            if all(np.linalg.norm(z - e) > 1e-6 for e in dirs):
                dirs.append(z)

    out = []
    for z in dirs:
        cand = ProximalNormalCandidate(base=x, dir=z)
        if certify:
            rho = _certify_radius(oracle, x, z, t0)
            if rho is None:
                continue
            cand.realized_radius = rho
            cand.sigma = 0.0 if math.isinf(rho) else 1.0 / (2.0 * rho)
        out.append(cand)
    out.sort(key=lambda c: tuple(c.dir))
    return out


def _check_point(oracle, condition, x, r, normal_budget, seed, idx, witnesses):
    """Returns True when the thin-boundary clause passed vacuously."""
    cands = sample_proximal_normals(oracle, x, normal_budget, seed, certify=False)
    realized = [realized_by_sphere(oracle, x, c.dir, r) for c in cands]

    def needs_one(reason_none, reason_fail):
        if not cands:
            witnesses.append(Witness(x, None, reason_none, idx))
        elif not any(realized):
            witnesses.append(Witness(x, cands[0].dir, reason_fail, idx))

    if condition == "exterior":
        needs_one("no-normal-found", "no-normal-realized")
        return False
    if condition == "prox_regular":
        for c, ok in zip(cands, realized):
            if not ok:
                witnesses.append(Witness(x, c.dir, "normal-not-realized", idx))
        return False
    # extended: split by the boundary classification
    kind = oracle.classify_boundary(x)
    if kind == INTERIOR_BOUNDARY:
        needs_one("no-normal-found", "no-normal-realized")
        return False
    for c, ok in zip(cands, realized):
        if not ok:
            witnesses.append(Witness(x, c.dir, "thin-normal-not-realized", idx))
    return not cands


def check_condition(oracle: SetOracle, condition: str, r: float,
                    boundary_budget: int = 512, normal_budget: int = 16,
                    seed: int = 0) -> ConditionReport:
    """Check a sphere condition on sampled boundary points.

    Args:
        oracle: the set under test.
        condition: one of ``exterior``, ``extended``, ``prox_regular``.
        r: sphere radius, > 0.
        boundary_budget: number of boundary samples to draw.
        normal_budget: probe budget per point for normal discovery.
        seed: sampling seed; identical seeds give identical reports.

    Returns:
        A ConditionReport; ``passed`` iff no witness was found.  Thin-boundary
        points where no normal was found count as "not refuted" rather than
        as passes, tracked in ``thin_not_refuted``.
    """
    if condition not in CONDITIONS:
        raise ValueError(f"unknown condition '{condition}'")
    if r <= 0:
        raise ValueError("radius must be strictly positive")
    if boundary_budget < 1 or normal_budget < 1:
        raise ValueError("budgets must be >= 1")
    samples = oracle.boundary_sample(boundary_budget, seed)
    witnesses: list[Witness] = []
    thin_unrefuted = 0
    for idx, x in enumerate(samples):
        if _check_point(oracle, condition, x, r, normal_budget, seed, idx, witnesses):
            thin_unrefuted += 1
    witnesses.sort(key=lambda w: w.sample_index)
    return ConditionReport(
        condition=condition,
        radius=float(r),
        samples_checked=len(samples),
        passed=not witnesses,
        witnesses=witnesses,
        seed=seed,
        thin_not_refuted=thin_unrefuted,
    )


def closure_inheritance_check(oracle: SetOracle, r: float,
                              boundary_budget: int = 512, normal_budget: int = 16,
                              seed: int = 0):
    """Exterior check on S and on cl(int S); flags the one forbidden outcome.

    If S passes the exterior condition, cl(int S) must too; ``consistent`` is
    False only when that implication is observed violated.
    """
    closure = oracle.closure_of_interior()
    if closure is None:
        raise ValueError("oracle does not expose a closure-of-interior companion")
    report_s = check_condition(oracle, "exterior", r, boundary_budget, normal_budget, seed)
    report_c = check_condition(closure, "exterior", r, boundary_budget, normal_budget, seed)
    consistent = not (report_s.passed and not report_c.passed)
    return report_s, report_c, consistent
