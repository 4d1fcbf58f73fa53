"""Set oracles: closed subsets of R^n behind a query interface.

Every oracle answers membership, distance, nearest-point projection,
boundary sampling, interior probing and (where closed forms exist) proximal
normal directions.  Shipped sets: half-spaces, closed balls, hyperplanes,
segments, finite unions, complements of finite unions of open balls, pairs
of exponential curves, a slab with two pinching whisker curves, and empty
sets (as closure companions of thin sets).

All oracles are immutable after construction and safe for concurrent use.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DimensionMismatch, ProxcoverError
from .geometry import Tolerances, Vec, as_point, unit_vector
from .sampling import seed_offset, split_budget, unit_directions, window_points

INTERIOR_BOUNDARY = "interior_boundary"
THIN_BOUNDARY = "thin_boundary"

_DEFAULT_WINDOW_HALFWIDTH = 3.0


def _default_window(dim: int, halfwidth: float = _DEFAULT_WINDOW_HALFWIDTH):
    return [(-halfwidth, halfwidth)] * dim


class SetOracle:
    """Behavioral contract for a nonempty closed set ``S`` in R^n."""

    #: capability flags; subclasses override as appropriate
    exact_projection = False
    analytic_normals = False
    interior_membership = False
    has_interior = True
    regular_closed = False

    def __init__(self, dim: int, window=None, tol: Tolerances | None = None):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self.dim = int(dim)
        self.tol = tol or Tolerances()
        win = window if window is not None else _default_window(dim)
        self.window = [(float(lo), float(hi)) for lo, hi in win]
        if len(self.window) != dim:
            raise DimensionMismatch("window must have one (lo, hi) pair per axis")

    # -- basic queries -----------------------------------------------------

    def distance_and_project(self, p) -> tuple[float, Vec]:
        raise NotImplementedError

    def distance(self, p) -> float:
        return self.distance_and_project(p)[0]

    def project(self, p) -> Vec:
        return self.distance_and_project(p)[1]

    def contains(self, p) -> bool:
        return self.distance(p) <= self.tol.tol_emptiness

    def is_interior(self, p, margin: float = 0.0) -> bool:
        """Membership in int S by at least ``margin``.

        Generic oracles certify with a (2n+1)-probe cluster; analytic ones
        answer exactly.
        """
        p = as_point(p, self.dim)
        if not self.has_interior:
            return False
        if not self.contains(p):
            return False
        h = max(self.tol.tol_boundary, margin)
        for i in range(self.dim):
            for s in (+h, -h):
                q = p.copy()
                q[i] += s
                if not self.contains(q):
                    return False
        return True

    # -- boundary ----------------------------------------------------------

    def boundary_sample(self, budget: int, seed: int = 0) -> np.ndarray:
        raise NotImplementedError

    def boundary_measure(self) -> float:
        """Rough boundary size inside the window; used to split union budgets."""
        widths = [hi - lo for lo, hi in self.window]
        return float(np.mean(widths)) ** (self.dim - 1)

    def on_boundary(self, p, slack: float | None = None) -> bool:
        p = as_point(p, self.dim)
        slack = slack if slack is not None else 10.0 * self.tol.tol_boundary
        if self.distance(p) > slack:
            return False
        if self.is_interior(p, margin=slack):
            return False
        h = max(4.0 * slack, 1e-7)
        for d in unit_directions(2 * self.dim + 4, self.dim, 0):
            if self.distance(p + h * d) > 0.25 * h:
                return True
        return False

    def classify_boundary(self, p, eps: float = 1e-6) -> str:
        """Split boundary points into interior-adjacent and thin ones."""
        p = as_point(p, self.dim)
        if not self.on_boundary(p):
            raise ProxcoverError(f"classify_boundary: {p.tolist()} is not near the boundary")
        if self.interior_probe(p, eps) is not None:
            return INTERIOR_BOUNDARY
        return THIN_BOUNDARY

    # -- interior probing --------------------------------------------------

    def _interior_push(self, p: Vec, eps: float) -> Vec | None:
        """Closed-form candidate for a nearby interior point, if known."""
        return None

    def interior_probe(self, p, eps: float) -> Vec | None:
        """A point of ``B(p; eps) ∩ int S``, or None if none is found."""
        if eps <= 0.0:
            raise ValueError("eps must be strictly positive")
        p = as_point(p, self.dim)
        if not self.has_interior:
            return None
        z = self._interior_push(p, eps)
        if z is not None and np.linalg.norm(z - p) < eps and self.is_interior(z):
            return z
        scales = (0.5, 0.25, 0.0625)
        per_scale = max(1, self.tol.probe_budget // len(scales))
        dirs = unit_directions(per_scale, self.dim, 0)
        for s in scales:
            for d in dirs:
                z = p + (s * eps) * d
                if self.is_interior(z):
                    return z
        return None

    # -- normals and companions ---------------------------------------------

    def normal_directions(self, p) -> list[Vec] | None:
        """Unit generators of the proximal normal cone at a boundary point.

        None means "no closed form" (callers fall back to probing); an empty
        list asserts the cone is trivial.
        """
        return None

    def closure_of_interior(self) -> "SetOracle | None":
        return None

    @property
    def closure_of_interior_available(self) -> bool:
        return self.closure_of_interior() is not None

    def project_to_boundary(self, p) -> Vec:
        p = as_point(p, self.dim)
        if not self.contains(p):
            return self.project(p)
        raise NotImplementedError("no boundary projection from inside this set")

    # -- rendering -----------------------------------------------------------

    def boundary_polylines(self, samples: int = 257) -> list[np.ndarray]:
        return []


class EmptySet(SetOracle):
    """The empty set; closure companion of sets with empty interior."""

    has_interior = False

    def distance_and_project(self, p):
        raise ProxcoverError("the empty set has no nearest point")

    def distance(self, p):
        return math.inf

    def contains(self, p):
        return False

    def boundary_sample(self, budget, seed=0):
        return np.empty((0, self.dim))

    def boundary_measure(self):
        return 0.0

    def on_boundary(self, p, slack=None):
        return False


class ClosedHalfspace(SetOracle):
    """``{x : <normal, x> <= offset}`` with a unit normal."""

    exact_projection = True
    analytic_normals = True
    interior_membership = True
    regular_closed = True

    def __init__(self, normal, offset: float, window=None, tol=None):
        normal = np.asarray(normal, dtype=float)
        super().__init__(normal.size, window, tol)
        self.normal = unit_vector(normal)
        self.offset = float(offset) / float(np.linalg.norm(normal))

    def _signed(self, p) -> float:
        return float(np.dot(self.normal, as_point(p, self.dim)) - self.offset)

    def distance_and_project(self, p):
        p = as_point(p, self.dim)
        s = self._signed(p)
        if s <= 0.0:
            return 0.0, p
        return s, p - s * self.normal

    def is_interior(self, p, margin: float = 0.0):
        return self._signed(p) < -margin

    def on_boundary(self, p, slack=None):
        slack = slack if slack is not None else 10.0 * self.tol.tol_boundary
        return abs(self._signed(p)) <= slack

    def classify_boundary(self, p, eps=1e-6):
        if not self.on_boundary(p):
            raise ProxcoverError("not a boundary point of the half-space")
        return INTERIOR_BOUNDARY

    def _interior_push(self, p, eps):
        return as_point(p, self.dim) - (0.5 * eps) * self.normal

    def normal_directions(self, p):
        return [self.normal.copy()]

    def closure_of_interior(self):
        return self

    def boundary_sample(self, budget, seed=0):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        pts = window_points(budget, self.window, seed)
        s = pts @ self.normal - self.offset
        return pts - s[:, None] * self.normal

    def project_to_boundary(self, p):
        p = as_point(p, self.dim)
        return p - self._signed(p) * self.normal

    def boundary_polylines(self, samples=2):
        if self.dim != 2:
            return []
        t = unit_vector([-self.normal[1], self.normal[0]])
        base = self.offset * self.normal
        span = max(hi - lo for lo, hi in self.window) * 2.0
        return [np.vstack([base - span * t, base + span * t])]


class ClosedBall(SetOracle):
    """The closed ball ``{x : |x - c| <= R}``."""

    exact_projection = True
    analytic_normals = True
    interior_membership = True
    regular_closed = True

    def __init__(self, center, radius: float, window=None, tol=None):
        center = as_point(center)
        if window is None:
            r = float(radius)
            window = [(c - 3.0 * r, c + 3.0 * r) for c in center]
        super().__init__(center.size, window, tol)
        if radius <= 0:
            raise ValueError("ball radius must be strictly positive")
        self.center = center
        self.radius = float(radius)

    def distance_and_project(self, p):
        p = as_point(p, self.dim)
        v = p - self.center
        n = float(np.linalg.norm(v))
        if n <= self.radius:
            return 0.0, p
        # tie-break at the exact center: lexicographically smallest sphere point
        if n == 0.0:
            q = self.center.copy()
            q[0] -= self.radius
            return self.radius, q
        return n - self.radius, self.center + (self.radius / n) * v

    def is_interior(self, p, margin: float = 0.0):
        n = float(np.linalg.norm(as_point(p, self.dim) - self.center))
        return n < self.radius - margin

    def on_boundary(self, p, slack=None):
        slack = slack if slack is not None else 10.0 * self.tol.tol_boundary
        n = float(np.linalg.norm(as_point(p, self.dim) - self.center))
        return abs(n - self.radius) <= slack

    def classify_boundary(self, p, eps=1e-6):
        if not self.on_boundary(p):
            raise ProxcoverError("not a boundary point of the ball")
        return INTERIOR_BOUNDARY

    def _interior_push(self, p, eps):
        p = as_point(p, self.dim)
        v = self.center - p
        n = float(np.linalg.norm(v))
        if n == 0.0:
            return p
        step = min(0.5 * eps, n)
        return p + (step / n) * v

    def normal_directions(self, p):
        p = as_point(p, self.dim)
        v = p - self.center
        n = float(np.linalg.norm(v))
        if n == 0.0:
            return []
        return [v / n]

    def closure_of_interior(self):
        return self

    def boundary_measure(self):
        d, r = self.dim, self.radius
        return float(2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0) * r ** (d - 1))

    def boundary_sample(self, budget, seed=0):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        if self.dim == 2:
            u = seed_offset(seed)
            theta = 2.0 * math.pi * (np.arange(budget) + u) / budget
            dirs = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        else:
            rng = np.random.default_rng([seed, 2750244])
            g = rng.standard_normal((budget, self.dim))
            dirs = g / np.linalg.norm(g, axis=1)[:, None]
        return self.center + self.radius * dirs

    def project_to_boundary(self, p):
        p = as_point(p, self.dim)
        v = p - self.center
        n = float(np.linalg.norm(v))
        if n == 0.0:
            q = self.center.copy()
            q[0] -= self.radius
            return q
        return self.center + (self.radius / n) * v

    def boundary_polylines(self, samples=257):
        if self.dim != 2:
            return []
        theta = np.linspace(0.0, 2.0 * math.pi, samples)
        ring = self.center + self.radius * np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return [ring]


class Hyperplane(SetOracle):
    """The thin set ``{x : <normal, x> = offset}`` (a line when n = 2)."""

    exact_projection = True
    analytic_normals = True
    has_interior = False

    def __init__(self, normal, offset: float, window=None, tol=None):
        normal = np.asarray(normal, dtype=float)
        super().__init__(normal.size, window, tol)
        self.normal = unit_vector(normal)
        self.offset = float(offset) / float(np.linalg.norm(normal))

    def distance_and_project(self, p):
        p = as_point(p, self.dim)
        s = float(np.dot(self.normal, p) - self.offset)
        return abs(s), p - s * self.normal

    def on_boundary(self, p, slack=None):
        slack = slack if slack is not None else 10.0 * self.tol.tol_boundary
        return self.distance(p) <= slack

    def classify_boundary(self, p, eps=1e-6):
        if not self.on_boundary(p):
            raise ProxcoverError("not a boundary point of the hyperplane")
        return THIN_BOUNDARY

    def normal_directions(self, p):
        return [self.normal.copy(), -self.normal.copy()]

    def closure_of_interior(self):
        return EmptySet(self.dim, self.window, self.tol)

    def boundary_sample(self, budget, seed=0):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        pts = window_points(budget, self.window, seed)
        s = pts @ self.normal - self.offset
        return pts - s[:, None] * self.normal

    def boundary_polylines(self, samples=2):
        if self.dim != 2:
            return []
        t = unit_vector([-self.normal[1], self.normal[0]])
        base = self.offset * self.normal
        span = max(hi - lo for lo, hi in self.window) * 2.0
        return [np.vstack([base - span * t, base + span * t])]


class Segment(SetOracle):
    """The closed segment joining two points (2-D)."""

    exact_projection = True
    analytic_normals = True
    has_interior = False

    #: number of fan directions used for the cone at an endpoint
    _ENDPOINT_FAN = 9

    def __init__(self, a, b, window=None, tol=None):
        a, b = as_point(a), as_point(b)
        if a.size != b.size:
            raise DimensionMismatch("segment endpoints must share a dimension")
        super().__init__(a.size, window, tol)
        if np.linalg.norm(b - a) <= 0:
            raise ValueError("segment endpoints must be distinct")
        self.a, self.b = a, b
        self._axis = unit_vector(b - a)
        self._length = float(np.linalg.norm(b - a))

    def distance_and_project(self, p):
        p = as_point(p, self.dim)
        t = float(np.dot(p - self.a, self._axis))
        t = min(max(t, 0.0), self._length)
        q = self.a + t * self._axis
        return float(np.linalg.norm(p - q)), q

    def on_boundary(self, p, slack=None):
        slack = slack if slack is not None else 10.0 * self.tol.tol_boundary
        return self.distance(p) <= slack

    def classify_boundary(self, p, eps=1e-6):
        if not self.on_boundary(p):
            raise ProxcoverError("not a boundary point of the segment")
        return THIN_BOUNDARY

    def _endpoint_fan(self, outward: Vec) -> list[Vec]:
        # cone at an endpoint: every direction within 90 degrees of the
        # outward axis direction
        perp = np.array([-outward[1], outward[0]])
        angles = np.linspace(-0.5 * math.pi, 0.5 * math.pi, self._ENDPOINT_FAN)
        return [math.cos(a) * outward + math.sin(a) * perp for a in angles]

    def normal_directions(self, p):
        if self.dim != 2:
            return None
        p = as_point(p, self.dim)
        t = float(np.dot(p - self.a, self._axis))
        slack = 10.0 * self.tol.tol_boundary
        if t <= slack:
            return self._endpoint_fan(-self._axis)
        if t >= self._length - slack:
            return self._endpoint_fan(self._axis)
        perp = np.array([-self._axis[1], self._axis[0]])
        return [perp, -perp]

    def closure_of_interior(self):
        return EmptySet(self.dim, self.window, self.tol)

    def boundary_measure(self):
        return self._length

    def boundary_sample(self, budget, seed=0):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        u = seed_offset(seed)
        if budget == 1:
            ts = np.array([0.5 * (1.0 + u)])
        elif u == 0.0:
            ts = np.linspace(0.0, 1.0, budget)
        else:
            ts = (np.arange(budget) + u) / budget
        return self.a + np.outer(ts * self._length, self._axis)

    def boundary_polylines(self, samples=2):
        return [np.vstack([self.a, self.b])]


class ComplementOfOpenBalls(SetOracle):
    """``S = (∪ B(c_i; r_i))^c``: everything outside a union of open balls."""

    exact_projection = True
    analytic_normals = True
    interior_membership = True
    regular_closed = True

    def __init__(self, centers, radii, window=None, tol=None):
        centers = np.atleast_2d(np.asarray(centers, dtype=float))
        radii = np.atleast_1d(np.asarray(radii, dtype=float))
        if centers.shape[0] != radii.size:
            raise ValueError("need one radius per center")
        if np.any(radii <= 0):
            raise ValueError("ball radii must be strictly positive")
        if window is None:
            span = float(np.max(np.abs(centers)) + np.max(radii)) * 1.5
            window = [(-span, span)] * centers.shape[1]
        super().__init__(centers.shape[1], window, tol)
        self.centers = centers
        self.radii = radii

    def _margins(self, p) -> np.ndarray:
        return np.linalg.norm(self.centers - as_point(p, self.dim), axis=1) - self.radii

    def contains(self, p):
        return bool(np.min(self._margins(p)) >= -self.tol.tol_emptiness)

    def is_interior(self, p, margin: float = 0.0):
        return bool(np.min(self._margins(p)) > margin)

    def _boundary_candidates(self, p: Vec) -> list[Vec]:
        cands = []
        k = self.centers.shape[0]
        for i in range(k):
            v = p - self.centers[i]
            n = float(np.linalg.norm(v))
            if n == 0.0:
                v = np.zeros(self.dim)
                v[0] = -1.0
                n = 1.0
            cands.append(self.centers[i] + (self.radii[i] / n) * v)
        for i in range(k):
            for j in range(i + 1, k):
                d = float(np.linalg.norm(self.centers[j] - self.centers[i]))
                ri, rj = float(self.radii[i]), float(self.radii[j])
                if d >= ri + rj or d <= abs(ri - rj) or d == 0.0:
                    continue  # no transverse sphere-sphere intersection
                u = (self.centers[j] - self.centers[i]) / d
                a = (d * d + ri * ri - rj * rj) / (2.0 * d)
                rho2 = ri * ri - a * a
                if rho2 <= 0.0:
                    continue
                m = self.centers[i] + a * u
                w = p - m
                w_perp = w - np.dot(w, u) * u
                n = float(np.linalg.norm(w_perp))
                if n < 1e-14:
                    w_perp = np.zeros(self.dim)
                    w_perp[int(np.argmin(np.abs(u)))] = 1.0
                    w_perp -= np.dot(w_perp, u) * u
                    n = float(np.linalg.norm(w_perp))
                cands.append(m + math.sqrt(rho2) * (w_perp / n))
        return cands

    def distance_and_project(self, p):
        p = as_point(p, self.dim)
        margins = self._margins(p)
        if np.min(margins) >= 0.0:
            return 0.0, p
        slack = 1e-12 * max(1.0, float(np.max(self.radii)))
        best = None
        for q in self._boundary_candidates(p):
            if np.min(self._margins(q)) < -slack:
                continue  # candidate swallowed by another open ball
            d = float(np.linalg.norm(p - q))
            key = (d, tuple(q))
            if best is None or key < best[0]:
                best = (key, q, d)
        if best is None:
            raise ProxcoverError("projection onto the ball-complement failed")
        return best[2], best[1]

    def normal_directions(self, p):
        p = as_point(p, self.dim)
        slack = 10.0 * self.tol.tol_boundary
        dirs = []
        for i in range(self.centers.shape[0]):
            v = self.centers[i] - p
            n = float(np.linalg.norm(v))
            if abs(n - self.radii[i]) <= slack and n > 0:
                dirs.append(v / n)
        return dirs

    def on_boundary(self, p, slack=None):
        slack = slack if slack is not None else 10.0 * self.tol.tol_boundary
        margins = self._margins(p)
        return bool(np.min(margins) >= -slack and np.min(np.abs(margins)) <= slack)

    def classify_boundary(self, p, eps=1e-6):
        if not self.on_boundary(p):
            raise ProxcoverError("not a boundary point of the ball-complement")
        return INTERIOR_BOUNDARY

    def _interior_push(self, p, eps):
        p = as_point(p, self.dim)
        slack = 10.0 * self.tol.tol_boundary
        margins = self._margins(p)
        active = np.where(np.abs(margins) <= max(slack, 0.25 * eps))[0]
        if active.size == 0:
            active = np.array([int(np.argmin(np.abs(margins)))])
        outward = np.zeros(self.dim)
        for i in active:
            v = p - self.centers[i]
            n = float(np.linalg.norm(v))
            if n > 0:
                outward += v / n
        n = float(np.linalg.norm(outward))
        if n == 0.0:
            return None
        return p + (0.5 * eps / n) * outward

    def closure_of_interior(self):
        return self

    def boundary_measure(self):
        return float(np.sum(self.radii ** (self.dim - 1)))

    def boundary_sample(self, budget, seed=0):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        k = self.centers.shape[0]
        alloc = split_budget(budget, self.radii ** (self.dim - 1))
        out = []
        for i in range(k):
            want = alloc[i]
            if want == 0:
                continue
            got = []
            factor = 1
            while len(got) < want and factor <= 64:
                count = want * factor
                if self.dim == 2:
                    u = seed_offset(seed + i)
                    theta = 2.0 * math.pi * (np.arange(count) + u) / count
                    dirs = np.stack([np.cos(theta), np.sin(theta)], axis=1)
                else:
                    rng = np.random.default_rng([seed, i, 425033])
                    g = rng.standard_normal((count, self.dim))
                    dirs = g / np.linalg.norm(g, axis=1)[:, None]
                pts = self.centers[i] + self.radii[i] * dirs
                keep = []
                for q in pts:
                    m = self._margins(q)
                    m[i] = 0.0
                    if np.min(m) >= -1e-12:
                        keep.append(q)
                got = keep
                factor *= 2
            out.extend(got[:want])
        if len(out) < budget // 2:
            raise ProxcoverError("boundary sampling exhausted: spheres mostly swallowed")
        return np.asarray(out)

    def project_to_boundary(self, p):
        p = as_point(p, self.dim)
        if np.min(self._margins(p)) < 0.0:
            return self.project(p)
        slack = 1e-12 * max(1.0, float(np.max(self.radii)))
        best = None
        for q in self._boundary_candidates(p):
            if np.min(self._margins(q)) < -slack:
                continue
            d = float(np.linalg.norm(p - q))
            key = (d, tuple(q))
            if best is None or key < best[0]:
                best = (key, q)
        return best[1]

    def boundary_polylines(self, samples=257):
        if self.dim != 2:
            return []
        theta = np.linspace(0.0, 2.0 * math.pi, samples)
        ring = np.stack([np.cos(theta), np.sin(theta)], axis=1)
        return [c + r * ring for c, r in zip(self.centers, self.radii)]


class _ParamCurve(SetOracle):
    """Shared machinery for thin 2-D curves given by ``t -> (t, f(t))``."""

    exact_projection = True
    analytic_normals = True
    has_interior = False

    #: multistart grid size for the 1-D projection search
    _GRID = 512
    _REFINE = 6

    def _f(self, t):
        raise NotImplementedError

    def _fprime(self, t):
        raise NotImplementedError

    def _fsecond(self, t):
        raise NotImplementedError

    def _param_range(self, q: Vec) -> tuple[float, float]:
        raise NotImplementedError

    def _curve_point(self, t: float) -> Vec:
        return np.array([t, self._f(t)])

    def _project_param(self, q: Vec) -> float:
        lo, hi = self._param_range(q)
        ts = np.linspace(lo, hi, self._GRID)
        ys = self._f(ts)
        d2 = (ts - q[0]) ** 2 + (ys - q[1]) ** 2
        interior_min = np.where((d2[1:-1] <= d2[:-2]) & (d2[1:-1] <= d2[2:]))[0] + 1
        order = interior_min[np.argsort(d2[interior_min], kind="stable")]
        brackets = [int(i) for i in order[: self._REFINE]]
        for endpoint in (0, len(ts) - 1):
            if len(brackets) < self._REFINE + 2:
                brackets.append(endpoint)
        best_t, best_d2 = None, math.inf

        def f1(t):
            return (t - q[0]) ** 2 + (self._f(t) - q[1]) ** 2

        for i in brackets:
            a = ts[max(i - 1, 0)]
            b = ts[min(i + 1, len(ts) - 1)]
            if a == b:
                t_star, val = float(ts[i]), float(d2[i])
            else:
                res = minimize_scalar(f1, bounds=(a, b), method="bounded",
                                      options={"xatol": 1e-13})
                t_star, val = float(res.x), float(res.fun)
            # the bounded minimizer bottoms out near sqrt(eps)*|t|; a guarded
            # Newton step on the distance derivative recovers full precision
            t_star, val = self._polish(t_star, q, lo, hi, f1, val)
            if val < best_d2:
                best_t, best_d2 = t_star, val
        return best_t

    def _polish(self, t, q, lo, hi, f1, val):
        best_t, best_val = t, val
        for _ in range(12):
            fv = self._f(t)
            fp = self._fprime(t)
            fpp = self._fsecond(t)
            g = (t - q[0]) + fp * (fv - q[1])
            gp = 1.0 + fpp * (fv - q[1]) + fp * fp
            if not math.isfinite(gp) or gp <= 0.0:
                break
            t_new = min(max(t - g / gp, lo), hi)
            v_new = f1(t_new)
            if v_new < best_val:
                best_t, best_val = t_new, v_new
            if abs(t_new - t) <= 1e-15 * max(1.0, abs(t)):
                break
            t = t_new
        return best_t, best_val

    def distance_and_project(self, p):
        p = as_point(p, self.dim)
        t = self._project_param(p)
        q = self._curve_point(t)
        return float(np.linalg.norm(p - q)), q

    def on_boundary(self, p, slack=None):
        slack = slack if slack is not None else 10.0 * self.tol.tol_boundary
        return self.distance(p) <= slack

    def classify_boundary(self, p, eps=1e-6):
        if not self.on_boundary(p):
            raise ProxcoverError("not a boundary point of the curve")
        return THIN_BOUNDARY

    def closure_of_interior(self):
        return EmptySet(self.dim, self.window, self.tol)

    def _unit_normal(self, t: float) -> Vec:
        fp = self._fprime(t)
        return np.array([-fp, 1.0]) / math.sqrt(1.0 + fp * fp)

    def normal_directions(self, p):
        p = as_point(p, self.dim)
        n = self._unit_normal(float(p[0]))
        return [n, -n]


class ExpCurve(_ParamCurve):
    """One branch of ``{(t, sign * e^t) : t in R}``."""

    def __init__(self, sign: int = +1, window=None, tol=None):
        if window is None:
            window = [(-5.0, 5.0), (-160.0, 160.0)]
        super().__init__(2, window, tol)
        self.sign = 1 if sign >= 0 else -1

    def _f(self, t):
        return self.sign * np.exp(t)

    def _fprime(self, t):
        return self.sign * math.exp(t)

    def _fsecond(self, t):
        return self.sign * math.exp(t)

    def _param_range(self, q):
        lo = min(-10.0, float(q[0]) - 6.0)
        hi = max(3.0, float(q[0]) + 6.0, math.log(max(abs(float(q[1])), 1e-12)) + 4.0)
        return lo, hi

    def boundary_measure(self):
        lo, hi = self.window[0]
        ts = np.linspace(lo, hi, 1024)
        return float(np.trapz(np.sqrt(1.0 + np.exp(2.0 * ts)), ts))

    def boundary_sample(self, budget, seed=0):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        lo, hi = self.window[0]
        u = seed_offset(seed)
        if budget == 1:
            ts = np.array([0.5 * (lo + hi)])
        elif u == 0.0:
            ts = np.linspace(lo, hi, budget)
        else:
            ts = lo + (hi - lo) * (np.arange(budget) + u) / budget
        return np.stack([ts, self.sign * np.exp(ts)], axis=1)

    def boundary_polylines(self, samples=257):
        lo, hi = self.window[0]
        ts = np.linspace(lo, hi, samples)
        return [np.stack([ts, self.sign * np.exp(ts)], axis=1)]


class WhiskerCurve(_ParamCurve):
    """One branch of ``{(t, sign / (1 + t^2)) : t >= 0}``."""

    def __init__(self, sign: int = +1, window=None, tol=None):
        if window is None:
            window = [(-3.0, 8.0), (-2.0, 2.0)]
        super().__init__(2, window, tol)
        self.sign = 1 if sign >= 0 else -1

    def _f(self, t):
        return self.sign / (1.0 + t * t)

    def _fprime(self, t):
        return self.sign * (-2.0 * t) / (1.0 + t * t) ** 2

    def _fsecond(self, t):
        return self.sign * (6.0 * t * t - 2.0) / (1.0 + t * t) ** 3

    def _param_range(self, q):
        return 0.0, max(25.0, float(q[0]) + 10.0)

    def normal_directions(self, p):
        p = as_point(p, self.dim)
        t = float(p[0])
        if t <= 10.0 * self.tol.tol_boundary:
            # junction end: only the outward direction is a proximal normal
            return [np.array([0.0, float(self.sign)])]
        n = self._unit_normal(t)
        return [n, -n]

    def boundary_measure(self):
        hi = max(self.window[0][1], 1.0)
        ts = np.linspace(0.0, hi, 1024)
        fp = -2.0 * ts / (1.0 + ts * ts) ** 2
        return float(np.trapz(np.sqrt(1.0 + fp * fp), ts))

    def boundary_sample(self, budget, seed=0):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        hi = max(self.window[0][1], 1.0)
        u = seed_offset(seed)
        if budget == 1:
            ts = np.array([0.5 * hi])
        elif u == 0.0:
            ts = np.linspace(0.0, hi, budget)
        else:
            ts = hi * (np.arange(budget) + u) / budget
        return np.stack([ts, self.sign / (1.0 + ts * ts)], axis=1)

    def boundary_polylines(self, samples=257):
        hi = max(self.window[0][1], 1.0)
        ts = np.linspace(0.0, hi, samples)
        return [np.stack([ts, self.sign / (1.0 + ts * ts)], axis=1)]


class Slab(SetOracle):
    """``{(x, y) : x <= x_max, |y| <= half_width}`` (2-D)."""

    exact_projection = True
    analytic_normals = True
    interior_membership = True
    regular_closed = True

    _CORNER_FAN = 5

    def __init__(self, x_max: float = 0.0, half_width: float = 1.0, window=None, tol=None):
        if window is None:
            window = [(x_max - 6.0, x_max + 3.0), (-half_width - 2.0, half_width + 2.0)]
        super().__init__(2, window, tol)
        self.x_max = float(x_max)
        self.half_width = float(half_width)

    def distance_and_project(self, p):
        p = as_point(p, self.dim)
        q = np.array([min(p[0], self.x_max),
                      min(max(p[1], -self.half_width), self.half_width)])
        return float(np.linalg.norm(p - q)), q

    def is_interior(self, p, margin: float = 0.0):
        p = as_point(p, self.dim)
        return p[0] < self.x_max - margin and abs(p[1]) < self.half_width - margin

    def on_boundary(self, p, slack=None):
        slack = slack if slack is not None else 10.0 * self.tol.tol_boundary
        p = as_point(p, self.dim)
        if self.distance(p) > slack:
            return False
        return (abs(p[0] - self.x_max) <= slack
                or abs(abs(p[1]) - self.half_width) <= slack)

    def classify_boundary(self, p, eps=1e-6):
        if not self.on_boundary(p):
            raise ProxcoverError("not a boundary point of the slab")
        return INTERIOR_BOUNDARY

    def _interior_push(self, p, eps):
        p = as_point(p, self.dim)
        ref = np.array([self.x_max - max(1.0, self.half_width), 0.0])
        v = ref - p
        n = float(np.linalg.norm(v))
        if n == 0.0:
            return p
        return p + (0.5 * eps / n) * v

    def _corner_fan(self, sign_y: float) -> list[Vec]:
        angles = np.linspace(0.0, 0.5 * math.pi, self._CORNER_FAN)
        return [np.array([math.cos(a), sign_y * math.sin(a)]) for a in angles]

    def normal_directions(self, p):
        p = as_point(p, self.dim)
        slack = 10.0 * self.tol.tol_boundary
        at_right = abs(p[0] - self.x_max) <= slack
        at_top = abs(p[1] - self.half_width) <= slack
        at_bottom = abs(p[1] + self.half_width) <= slack
        if at_right and at_top:
            return self._corner_fan(+1.0)
        if at_right and at_bottom:
            return self._corner_fan(-1.0)
        if at_right:
            return [np.array([1.0, 0.0])]
        if at_top:
            return [np.array([0.0, 1.0])]
        if at_bottom:
            return [np.array([0.0, -1.0])]
        return []

    def closure_of_interior(self):
        return self

    def _faces(self):
        x_lo = self.window[0][0]
        h = self.half_width
        return [
            (np.array([self.x_max, -h]), np.array([self.x_max, h])),   # right face
            (np.array([x_lo, h]), np.array([self.x_max, h])),          # top face
            (np.array([x_lo, -h]), np.array([self.x_max, -h])),        # bottom face
        ]

    def boundary_measure(self):
        return float(sum(np.linalg.norm(b - a) for a, b in self._faces()))

    def boundary_sample(self, budget, seed=0):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        faces = self._faces()
        alloc = split_budget(budget, [np.linalg.norm(b - a) for a, b in faces])
        u = seed_offset(seed)
        out = []
        for (a, b), count in zip(faces, alloc):
            if count == 0:
                continue
            if count == 1:
                ts = np.array([0.5 * (1.0 + u)])
            elif u == 0.0:
                ts = np.linspace(0.0, 1.0, count)
            else:
                ts = (np.arange(count) + u) / count
            out.append(a + np.outer(ts, b - a))
        return np.vstack(out)

    def project_to_boundary(self, p):
        p = as_point(p, self.dim)
        if not self.contains(p):
            return self.project(p)
        dx = self.x_max - p[0]
        dy = self.half_width - abs(p[1])
        if dx <= dy:
            return np.array([self.x_max, p[1]])
        return np.array([p[0], math.copysign(self.half_width, p[1]) if p[1] != 0 else self.half_width])

    def boundary_polylines(self, samples=2):
        x_lo = self.window[0][0]
        h = self.half_width
        return [np.array([[x_lo, h], [self.x_max, h], [self.x_max, -h], [x_lo, -h]])]


class UnionOracle(SetOracle):
    """A finite union of oracles; distance is the minimum over the parts."""

    def __init__(self, parts, window=None, tol=None, closure=None, regular_closed=False):
        parts = list(parts)
        if not parts:
            raise ValueError("a union needs at least one part")
        dim = parts[0].dim
        for p in parts:
            if p.dim != dim:
                raise DimensionMismatch("all union parts must share a dimension")
        if window is None:
            los = np.min([[lo for lo, _ in p.window] for p in parts], axis=0)
            his = np.max([[hi for _, hi in p.window] for p in parts], axis=0)
            window = list(zip(los, his))
        super().__init__(dim, window, tol)
        self.parts = parts
        self._closure = closure
        self.regular_closed = bool(regular_closed)
        self.exact_projection = all(p.exact_projection for p in parts)
        self.analytic_normals = all(p.analytic_normals for p in parts)
        self.interior_membership = all(
            p.interior_membership for p in parts if p.has_interior) and any(
            p.has_interior for p in parts)
        self.has_interior = any(p.has_interior for p in parts)

    def distance_and_project(self, p):
        p = as_point(p, self.dim)
        best = None
        for part in self.parts:
            d, q = part.distance_and_project(p)
            key = (d, tuple(q))
            if best is None or key < best[0]:
                best = (key, d, q)
        return best[1], best[2]

    def contains(self, p):
        return any(part.contains(p) for part in self.parts)

    def is_interior(self, p, margin: float = 0.0):
        return any(part.is_interior(p, margin) for part in self.parts)

    def on_boundary(self, p, slack=None):
        slack = slack if slack is not None else 10.0 * self.tol.tol_boundary
        if self.distance(p) > slack:
            return False
        return not self.is_interior(p, margin=slack)

    def classify_boundary(self, p, eps=1e-6):
        p = as_point(p, self.dim)
        if not self.on_boundary(p):
            raise ProxcoverError("not a boundary point of the union")
        for part in self.parts:
            if part.has_interior and part.on_boundary(p):
                return INTERIOR_BOUNDARY
        return THIN_BOUNDARY

    def _interior_push(self, p, eps):
        for part in self.parts:
            if part.has_interior:
                z = part._interior_push(p, eps)
                if z is not None and np.linalg.norm(z - p) < eps and part.is_interior(z):
                    return z
        return None

    def normal_directions(self, p):
        p = as_point(p, self.dim)
        slack = 10.0 * self.tol.tol_boundary
        near = [part for part in self.parts if part.distance(p) <= slack]
        if len(near) == 1:
            return near[0].normal_directions(p)
        # junction of several parts: the cones intersect; no generator survives
        # unless a subclass knows better
        return []

    def closure_of_interior(self):
        if self._closure is not None:
            return self._closure
        fat = [p for p in self.parts if p.has_interior]
        if not fat:
            return EmptySet(self.dim, self.window, self.tol)
        return None

    @property
    def thin_components(self):
        return [p for p in self.parts if not p.has_interior]

    def boundary_measure(self):
        return float(sum(p.boundary_measure() for p in self.parts))

    def boundary_sample(self, budget, seed=0):
        if budget < 1:
            raise ValueError("budget must be >= 1")
        alloc = split_budget(budget, [p.boundary_measure() for p in self.parts])
        out = []
        for part, count in zip(self.parts, alloc):
            if count == 0:
                continue
            pts = part.boundary_sample(count, seed)
            for q in pts:
                if not self.is_interior(q, margin=self.tol.tol_boundary):
                    out.append(q)
        if len(out) < budget // 2:
            raise ProxcoverError("union boundary sampling kept too few points")
        return np.asarray(out)

    def boundary_polylines(self, samples=257):
        out = []
        for part in self.parts:
            out.extend(part.boundary_polylines(samples))
        return out


class PinchedSlabWhiskers(UnionOracle):
    """A slab plus two whisker curves that pinch together to the right.

    The whiskers join the slab corners tangentially, so at the junctions the
    only proximal normal is the straight-out one.
    """

    def __init__(self, window=None, tol=None):
        if window is None:
            window = [(-3.0, 8.0), (-2.0, 2.0)]
        slab = Slab(0.0, 1.0, window=window, tol=tol)
        up = WhiskerCurve(+1, window=window, tol=tol)
        down = WhiskerCurve(-1, window=window, tol=tol)
        closure = Slab(0.0, 1.0, window=window, tol=tol)
        super().__init__([slab, up, down], window=window, tol=tol,
                         closure=closure, regular_closed=False)

    def normal_directions(self, p):
        p = as_point(p, self.dim)
        slack = 10.0 * self.tol.tol_boundary
        for sign in (+1.0, -1.0):
            if np.linalg.norm(p - np.array([0.0, sign])) <= slack:
                return [np.array([0.0, sign])]
        return super().normal_directions(p)


def make_example1(window=None, tol=None) -> UnionOracle:
    """Two exponential curves ``(t, e^t)`` and ``(t, -e^t)``; empty interior."""
    if window is None:
        window = [(-5.0, 5.0), (-160.0, 160.0)]
    up = ExpCurve(+1, window=window, tol=tol)
    down = ExpCurve(-1, window=window, tol=tol)
    return UnionOracle([up, down], window=window, tol=tol,
                       closure=EmptySet(2, window, tol), regular_closed=False)


def make_example2(window=None, tol=None) -> UnionOracle:
    """The closed unit disk plus the segment from (1, 0) to (2, 0)."""
    if window is None:
        window = [(-2.5, 2.5), (-2.5, 2.5)]
    disk = ClosedBall([0.0, 0.0], 1.0, window=window, tol=tol)
    seg = Segment([1.0, 0.0], [2.0, 0.0], window=window, tol=tol)
    closure = ClosedBall([0.0, 0.0], 1.0, window=window, tol=tol)
    return UnionOracle([disk, seg], window=window, tol=tol,
                       closure=closure, regular_closed=False)
