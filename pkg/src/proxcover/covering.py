"""Constructive covering of a set's complement by closed r/2-balls.

For an exterior point x the construction projects onto the set (foot s0,
clearance r0) and splits into three cases:

* case1: r0 > r/2 - the clearance ball around x already works;
* case2: r0 <= r/2 and s0 is thin boundary - the projection direction is a
  proximal normal; if it is realized at radius r, shift x halfway into the
  realizing ball;
* case3: r0 <= r/2 and s0 is adjacent to the interior - pull an interior
  point z near s0 (scale eps), bisect the segment [z, x] for a boundary
  point s_eps, take a realized unit normal there, and aim at the realizing
  ball's center y = s_eps + r * zeta.  Subcases on d = |y - x|: d ~ 0 keeps
  the ball at x, d < r shifts toward y, and d >= r goes through a larger
  intermediate ball of radius ``r_epsilon(r0, d, r)`` which provably exceeds
  r/2 for eps <= r0^3 / (4 r^2).

Every returned ball has radius exactly r/2, contains x, and is verified
empty against the oracle's distance.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CoverError, ExtendedConditionViolation
from .geometry import Ball, Vec, as_point
from .oracles import INTERIOR_BOUNDARY, SetOracle
from .conditions import realized_by_sphere, sample_proximal_normals
from .sampling import ball_points

CASE1 = "case1"
CASE2 = "case2"
CASE3_Y_EQ_X = "case3_y_eq_x"
CASE3_Y_NEAR = "case3_y_near"
CASE3_Y_FAR = "case3_y_far"
ALL_CASES = (CASE1, CASE2, CASE3_Y_EQ_X, CASE3_Y_NEAR, CASE3_Y_FAR)

#: interior-probe retries: eps is halved this many times before giving up
_MAX_PROBE_HALVINGS = 8
#: verification retries: eps is quartered this many times on a failed check
_MAX_VERIFY_RETRIES = 2


@dataclass
class CoverTrace:
    """Audit record of one ball construction."""

    x: Vec
    case: str
    s0: Vec
    r0: float
    ball: Ball
    verified: bool
    eps: float | None = None
    z_eps: Vec | None = None
    s_eps: Vec | None = None
    y_eps: Vec | None = None
    zeta: Vec | None = None
    r_eps: float | None = None
    alignment_value: float | None = None
    alignment_bound: float | None = None
    far_radius_ok: bool | None = None
    far_cover_checked: bool | None = None
    center_clearance: float = 0.0

    def to_json_dict(self) -> dict:
        def vec(v):
            return None if v is None else [float(c) for c in v]

        return {
            "x": vec(self.x),
            "case": self.case,
            "s0": vec(self.s0),
            "r0": float(self.r0),
            "eps": None if self.eps is None else float(self.eps),
            "z_eps": vec(self.z_eps),
            "s_eps": vec(self.s_eps),
            "y_eps": vec(self.y_eps),
            "zeta": vec(self.zeta),
            "r_eps": None if self.r_eps is None else float(self.r_eps),
            "alignment_value": self.alignment_value,
            "alignment_bound": self.alignment_bound,
            "far_radius_ok": self.far_radius_ok,
            "far_cover_checked": self.far_cover_checked,
            "ball": self.ball.to_dict(),
            "verified": bool(self.verified),
            "center_clearance": float(self.center_clearance),
        }


def r_epsilon(r0: float, d: float, r: float) -> float:
    """Radius of the intermediate ball in the far subcase.

    ``r_eps = r0^2 d / (d^2 + r0^2 - r^2)``; defined for 0 < r0 <= r/2 and
    d >= r (the denominator is then at least r0^2).  The value exceeds r/2
    whenever additionally d^2 < r^2 + r0^2 + r0^4 / r^2, which the eps budget
    guarantees for constructed configurations.
    """
    if not (0.0 < r0 <= 0.5 * r):
        raise ValueError(f"need 0 < r0 <= r/2, got r0={r0}, r={r}")
    if d < r:
        raise ValueError(f"need d >= r, got d={d}, r={r}")
    return r0 * r0 * d / (d * d + r0 * r0 - r * r)


def verify_far_ball_cover(x, r0: float, y, r: float, r_eps: float,
                          samples: int = 10_000, seed: int = 0) -> bool:
    """Sampled containment of B(x + r_eps*u; r_eps) in B(x; r0) ∪ B(y; r).

    u is the unit vector from x toward y.  Points are low-discrepancy samples
    of the open intermediate ball; True means every sample landed in one of
    the two covering balls.
    """
    x = as_point(x)
    y = as_point(y, x.size)
    u = (y - x) / np.linalg.norm(y - x)
    center = x + r_eps * u
    pts = center + r_eps * ball_points(samples, x.size, seed)
    in_near = np.linalg.norm(pts - x, axis=1) < r0
    in_far = np.linalg.norm(pts - y, axis=1) < r
    return bool(np.all(in_near | in_far))


def _bisect_boundary(oracle: SetOracle, inside: Vec, outside: Vec) -> Vec:
    """Boundary point of the segment [inside, outside] via membership bisection.

    ``inside`` must belong to the set and ``outside`` must not.  The bracket is
    driven far below tol_boundary so downstream inequalities keep their slack;
    with an exact projection the not-contained endpoint is snapped onto the set.
    """
    lo, hi = inside.copy(), outside.copy()
    target = 1e-13 * max(1.0, float(np.linalg.norm(outside - inside)))
    for _ in range(oracle.tol.max_bisection_iters):
        if float(np.linalg.norm(hi - lo)) <= target:
            break
        mid = 0.5 * (lo + hi)
        if oracle.contains(mid):
            lo = mid
        else:
            hi = mid
    if oracle.exact_projection:
        return oracle.project(hi)
    return lo


def _case3(oracle: SetOracle, x: Vec, r: float, s0: Vec, r0: float,
           normal_budget: int, seed: int, far_cover_samples: int) -> CoverTrace:
    tol_e = oracle.tol.tol_emptiness
    eps = (r0 ** 3) / (4.0 * r * r)

    for attempt in range(_MAX_VERIFY_RETRIES + 1):
        z = None
        for _ in range(_MAX_PROBE_HALVINGS + 1):
            z = oracle.interior_probe(s0, eps)
            if z is not None:
                break
            eps *= 0.5
        if z is None:
            raise CoverError("interior-probe-exhausted",
                             f"no interior point near {s0.tolist()}")

        s_eps = _bisect_boundary(oracle, z, x)
        cands = sample_proximal_normals(oracle, s_eps, normal_budget, seed, certify=False)
        if not cands:
            raise CoverError("no-proximal-normal-found",
                             f"at s_eps={s_eps.tolist()} (sampling gap, not a refutation)")
        realized = [c for c in cands if realized_by_sphere(oracle, s_eps, c.dir, r)]
        if not realized:
            raise ExtendedConditionViolation(
                f"no normal at s_eps={s_eps.tolist()} is realized at radius {r}")

        to_x = (x - s_eps) / np.linalg.norm(x - s_eps)
        realized.sort(key=lambda c: (-float(np.dot(c.dir, to_x)), tuple(c.dir)))
        zeta = realized[0].dir

        # alignment inequality: the interior probe direction must be nearly
        # perpendicular to (or opposed to) the realized normal
        xi = (z - x) / np.linalg.norm(z - x)
        align = float(np.dot(xi, zeta))
        align_bound = eps / (2.0 * r) + tol_e
        if align >= align_bound:
            raise CoverError("alignment-bound-violated",
                             f"<xi, zeta> = {align} >= {align_bound}")

        y = s_eps + r * zeta
        d = float(np.linalg.norm(y - x))
        r_eps_val = None
        far_ok = None
        far_checked = None
        if d <= oracle.tol.tol_boundary:
            case = CASE3_Y_EQ_X
            center = x.copy()
        elif d < r:
            case = CASE3_Y_NEAR
            center = x + (0.5 * r / d) * (y - x)
        else:
            case = CASE3_Y_FAR
            r_eps_val = r_epsilon(r0, d, r)
            far_ok = r_eps_val > 0.5 * r
            if not far_ok:
                raise CoverError("far-radius-bound-violated",
                                 f"r_eps={r_eps_val} <= r/2={0.5 * r}")
            if far_cover_samples > 0:
                far_checked = verify_far_ball_cover(x, r0, y, r, r_eps_val,
                                                    far_cover_samples, seed)
                if not far_checked:
                    raise CoverError("far-cover-check-failed",
                                     "sampled containment in the two covering balls failed")
            center = x + (0.5 * r / d) * (y - x)

        clearance = oracle.distance(center)
        verified = clearance >= 0.5 * r - tol_e
        if verified:
            return CoverTrace(
                x=x, case=case, s0=s0, r0=r0,
                ball=Ball(center, 0.5 * r, closed=True), verified=True,
                eps=eps, z_eps=z, s_eps=s_eps, y_eps=y, zeta=zeta,
                r_eps=r_eps_val, alignment_value=align, alignment_bound=align_bound,
                far_radius_ok=far_ok, far_cover_checked=far_checked,
                center_clearance=clearance,
            )
        eps *= 0.25  # construction slack scales with eps: tighten and retry

    raise CoverError("verification-failed",
                     f"ball at {center.tolist()} has clearance {clearance} < r/2")


def cover_point(oracle: SetOracle, x, r: float, normal_budget: int = 16,
                seed: int = 0, far_cover_samples: int = 0) -> CoverTrace:
    """A verified closed r/2-ball containing the exterior point x.

    Raises CoverError when the construction cannot complete; in particular an
    ``extended-condition-violated`` error marks a boundary point whose needed
    normal is not realized at radius r (sets that genuinely violate the
    extended sphere condition fail this way).
    """
    if r <= 0:
        raise ValueError("radius must be strictly positive")
    x = as_point(x, oracle.dim)
    if oracle.contains(x):
        raise CoverError("point-in-set", f"{x.tolist()} belongs to the set")

    r0, s0 = oracle.distance_and_project(x)
    tol_e = oracle.tol.tol_emptiness

    if r0 > 0.5 * r:
        ball = Ball(x, 0.5 * r, closed=True)
        return CoverTrace(x=x, case=CASE1, s0=s0, r0=r0, ball=ball, verified=True,
                          center_clearance=r0)

    if oracle.classify_boundary(s0, eps=max(1e-6, 0.1 * r0)) != INTERIOR_BOUNDARY:
        zeta0 = (x - s0) / r0
        if not realized_by_sphere(oracle, s0, zeta0, r):
            raise ExtendedConditionViolation(
                f"projection normal at s0={s0.tolist()} is not realized at radius {r}")
        center = x + (0.5 * r) * zeta0
        # the shifted ball sits inside the realizing r-ball: its center is
        # r/2 - r0 from that ball's center, which is (r - r0) - r/2
        gap = float(np.linalg.norm(center - (s0 + r * zeta0)))
        if gap > (r - r0) - 0.5 * r + 10.0 * tol_e:
            raise CoverError("shifted-ball-misplaced", f"gap {gap}")
        clearance = oracle.distance(center)
        verified = clearance >= 0.5 * r - tol_e
        if not verified:
            raise CoverError("verification-failed",
                             f"ball at {center.tolist()} has clearance {clearance}")
        return CoverTrace(x=x, case=CASE2, s0=s0, r0=r0, zeta=zeta0,
                          ball=Ball(center, 0.5 * r, closed=True), verified=True,
                          center_clearance=clearance)

    return _case3(oracle, x, r, s0, r0, normal_budget, seed, far_cover_samples)


def cover_point_regular_closed(oracle: SetOracle, x, r: float, r_prime: float,
                               normal_budget: int = 16, seed: int = 0) -> CoverTrace:
    """A verified closed r'-ball containing x, for regular closed sets.

    Runs the r/2-construction on the closure-of-interior companion to obtain
    an anchor center y, then either keeps the ball at y (when x is within r'
    of it) or shifts from x toward y by r'.  Requires 0 < r' < r/2.
    """
    if not (0.0 < r_prime < 0.5 * r):
        raise ValueError("need 0 < r_prime < r/2")
    if not oracle.regular_closed:
        raise CoverError("not-regular-closed",
                         "the r'-ball construction needs a regular closed set")
    closure = oracle.closure_of_interior()
    if closure is None:
        raise CoverError("no-closure-oracle", "closure-of-interior companion missing")
    x = as_point(x, oracle.dim)
    if oracle.contains(x):
        raise CoverError("point-in-set", f"{x.tolist()} belongs to the set")

    base = cover_point(closure, x, r, normal_budget, seed)
    y = base.ball.center
    gap = float(np.linalg.norm(y - x))
    if gap < r_prime:
        center = y
    else:
        center = x + (r_prime / gap) * (y - x)
    clearance = oracle.distance(center)
    if clearance < r_prime - oracle.tol.tol_emptiness:
        raise CoverError("verification-failed",
                         f"r'-ball at {center.tolist()} has clearance {clearance}")
    return CoverTrace(x=x, case=base.case, s0=base.s0, r0=base.r0,
                      eps=base.eps, z_eps=base.z_eps, s_eps=base.s_eps,
                      y_eps=y, zeta=base.zeta, r_eps=base.r_eps,
                      alignment_value=base.alignment_value,
                      alignment_bound=base.alignment_bound,
                      far_radius_ok=base.far_radius_ok,
                      ball=Ball(center, r_prime, closed=True), verified=True,
                      center_clearance=clearance)


@dataclass
class GridSpec:
    """Axis-aligned lattice ``lo:hi:step`` per axis."""

    axes: list[tuple[float, float, float]]

    @classmethod
    def parse(cls, text: str, dim: int) -> "GridSpec":
        parts = text.split("x")
        axes = []
        for part in parts:
            fields = part.split(":")
            if len(fields) != 3:
                raise ValueError(f"grid axis '{part}' is not lo:hi:step")
            lo, hi, step = (float(f) for f in fields)
            if step <= 0 or hi < lo:
                raise ValueError(f"grid axis '{part}' is degenerate")
            axes.append((lo, hi, step))
        if len(axes) == 1 and dim > 1:
            axes = axes * dim
        if len(axes) != dim:
            raise ValueError(f"grid has {len(axes)} axes, scene has {dim}")
        return cls(axes)

    def points(self) -> np.ndarray:
        ticks = [np.arange(lo, hi + 0.5 * step, step) for lo, hi, step in self.axes]
        mesh = np.meshgrid(*ticks, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=1)


@dataclass
class CoverSummary:
    grid_points: int = 0
    in_set: int = 0
    exterior: int = 0
    verified: int = 0
    cases: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)
    alignment_violations: int = 0
    far_radius_violations: int = 0

    @property
    def all_verified(self) -> bool:
        return not self.failures and self.verified == self.exterior

    def to_json_dict(self) -> dict:
        return {
            "grid_points": self.grid_points,
            "in_set": self.in_set,
            "exterior": self.exterior,
            "verified": self.verified,
            "cases": {k: self.cases[k] for k in sorted(self.cases)},
            "failures": [
                {"index": i, "point": [float(c) for c in p], "reason": reason}
                for i, p, reason in self.failures
            ],
            "alignment_violations": self.alignment_violations,
            "far_radius_violations": self.far_radius_violations,
        }


def cover_region(oracle: SetOracle, r: float, grid: GridSpec | str,
                 normal_budget: int = 16, seed: int = 0,
                 far_cover_samples: int = 0):
    """Cover every exterior grid point; per-point errors are collected, not raised.

    Returns ``(traces, summary)``; traces are ordered by grid index.
    """
    if isinstance(grid, str):
        grid = GridSpec.parse(grid, oracle.dim)
    pts = grid.points()
    traces: list[CoverTrace] = []
    summary = CoverSummary(grid_points=len(pts))
    for idx, p in enumerate(pts):
        if oracle.contains(p):
            summary.in_set += 1
            continue
        summary.exterior += 1
        try:
            trace = cover_point(oracle, p, r, normal_budget, seed, far_cover_samples)
        except CoverError as exc:
            summary.failures.append((idx, p, str(exc)))
            if exc.reason == "alignment-bound-violated":
                summary.alignment_violations += 1
            if exc.reason == "far-radius-bound-violated":
                summary.far_radius_violations += 1
            continue
        traces.append(trace)
        summary.verified += 1
        summary.cases[trace.case] = summary.cases.get(trace.case, 0) + 1
    return traces, summary


def traces_to_jsonl(traces) -> str:
    return "\n".join(json.dumps(t.to_json_dict()) for t in traces) + ("\n" if traces else "")
