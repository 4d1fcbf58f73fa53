"""Scene-definition files.

Schema::

    {"dimension": n,
     "set": {"kind": "...", "params": {...}},
     "window": [[lo, hi], ...],
     "tolerances": {...}}

Window and tolerances are optional; kinds map onto the shipped oracles.
"""

from __future__ import annotations

import json
import os

from .errors import SceneError
from .geometry import Tolerances
from . import oracles
from .oracles import (ClosedBall, ClosedHalfspace, ComplementOfOpenBalls,
                      Hyperplane, PinchedSlabWhiskers, Segment, SetOracle,
                      Slab, UnionOracle)


def _build_set(spec: dict, dim: int, window, tol) -> SetOracle:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise SceneError("scene 'set' must be an object with a 'kind'")
    kind = spec["kind"]
    params = spec.get("params", {}) or {}
    try:
        if kind in ("disk", "ball"):
            return ClosedBall(params.get("center", [0.0] * dim),
                              params.get("radius", 1.0), window=window, tol=tol)
        if kind == "halfspace":
            return ClosedHalfspace(params.get("normal", [0.0] * (dim - 1) + [1.0]),
                                   params.get("offset", 0.0), window=window, tol=tol)
        if kind == "line":
            return Hyperplane(params.get("normal", [0.0] * (dim - 1) + [1.0]),
                              params.get("offset", 0.0), window=window, tol=tol)
        if kind == "segment":
            return Segment(params["a"], params["b"], window=window, tol=tol)
        if kind == "slab":
            return Slab(params.get("x_max", 0.0), params.get("half_width", 1.0),
                        window=window, tol=tol)
        if kind == "complement_of_balls":
            return ComplementOfOpenBalls(params["centers"], params["radii"],
                                         window=window, tol=tol)
        if kind == "union":
            parts = [_build_set(s, dim, window, tol) for s in params["parts"]]
            closure = None
            if "closure" in params and params["closure"] is not None:
                closure = _build_set(params["closure"], dim, window, tol)
            return UnionOracle(parts, window=window, tol=tol, closure=closure,
                               regular_closed=bool(params.get("regular_closed", False)))
        if kind == "example1":
            return oracles.make_example1(window=window, tol=tol)
        if kind == "example2":
            return oracles.make_example2(window=window, tol=tol)
        if kind == "example3_surrogate":
            return PinchedSlabWhiskers(window=window, tol=tol)
        if kind == "simplex_complement":
            from .gallery import simplex_centers
            cfg = simplex_centers(params.get("n", dim), params.get("radius", 1.0))
            return ComplementOfOpenBalls(cfg.centers, [cfg.r] * (cfg.n + 1),
                                         window=window, tol=tol)
    except SceneError:
        raise
    except KeyError as exc:
        raise SceneError(f"scene kind '{kind}' is missing parameter {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise SceneError(f"bad parameters for scene kind '{kind}': {exc}") from exc
    raise SceneError(f"unknown set kind '{kind}'")


def scene_from_dict(doc: dict) -> SetOracle:
    if not isinstance(doc, dict):
        raise SceneError("scene file must contain a JSON object")
    try:
        dim = int(doc["dimension"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SceneError("scene needs an integer 'dimension'") from exc
    if dim < 1:
        raise SceneError("scene dimension must be >= 1")
    window = doc.get("window")
    if window is not None:
        if len(window) != dim or any(len(w) != 2 or w[0] >= w[1] for w in window):
            raise SceneError("scene window must be a list of [lo, hi] per axis")
        window = [(float(lo), float(hi)) for lo, hi in window]
    try:
        tol = Tolerances.from_dict(doc.get("tolerances"))
    except (TypeError, ValueError) as exc:
        raise SceneError(f"bad tolerances: {exc}") from exc
    oracle = _build_set(doc.get("set"), dim, window, tol)
    if oracle.dim != dim:
        raise SceneError(f"set has dimension {oracle.dim}, scene says {dim}")
    return oracle


def load_scene(path: str) -> SetOracle:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SceneError(f"cannot read scene file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SceneError(f"scene file is not valid JSON: {exc}") from exc
    return scene_from_dict(doc)


def atomic_write_text(path: str, text: str) -> None:
    """Write via a temp file and rename, so outputs are never half-written."""
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)
