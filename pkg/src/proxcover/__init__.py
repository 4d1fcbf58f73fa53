"""proxcover: sphere-condition checks and ball coverings of set complements.

The package verifies exterior / extended-exterior / prox-regularity sphere
conditions on closed subsets of R^n given through set oracles, constructively
covers their complements with closed r/2-balls, and reproduces the regular
simplex arrangement whose inscribed-through-origin radius pins the best
possible covering radius.
"""

from .geometry import Ball, Tolerances, as_point, unit_vector
from .errors import (CoverError, DimensionMismatch, ExtendedConditionViolation,
                     ProxcoverError, SceneError)
from .oracles import (INTERIOR_BOUNDARY, THIN_BOUNDARY, ClosedBall,
                      ClosedHalfspace, ComplementOfOpenBalls, EmptySet,
                      Hyperplane, PinchedSlabWhiskers, Segment, SetOracle,
                      Slab, UnionOracle, make_example1, make_example2)
from .conditions import (CONDITIONS, ConditionReport, ProximalNormalCandidate,
                         Witness, check_condition, closure_inheritance_check,
                         realized_by_sphere, sample_proximal_normals)
from .covering import (CoverSummary, CoverTrace, GridSpec, cover_point,
                       cover_point_regular_closed, cover_region, r_epsilon,
                       traces_to_jsonl, verify_far_ball_cover)
from .gallery import (GALLERY_IDS, SimplexConfig, face_pinch_points,
                      make_gallery_set, simplex_centers)
from .inscribed import (max_inscribed_radius_through_point,
                        simplex_tightness_radius, tightness_formula,
                        tightness_sweep)
from .estimates import (RegularityEstimate, certify_prox_radius,
                        estimate_report, prox_radius_estimate, r_S_distance)
from .scene import load_scene, scene_from_dict

__version__ = "0.1.0"

__all__ = [
    "Ball", "Tolerances", "as_point", "unit_vector",
    "CoverError", "DimensionMismatch", "ExtendedConditionViolation",
    "ProxcoverError", "SceneError",
    "INTERIOR_BOUNDARY", "THIN_BOUNDARY", "ClosedBall", "ClosedHalfspace",
    "ComplementOfOpenBalls", "EmptySet", "Hyperplane", "PinchedSlabWhiskers",
    "Segment", "SetOracle", "Slab", "UnionOracle",
    "make_example1", "make_example2",
    "CONDITIONS", "ConditionReport", "ProximalNormalCandidate", "Witness",
    "check_condition", "closure_inheritance_check", "realized_by_sphere",
    "sample_proximal_normals",
    "CoverSummary", "CoverTrace", "GridSpec", "cover_point",
    "cover_point_regular_closed", "cover_region", "r_epsilon",
    "traces_to_jsonl", "verify_far_ball_cover",
    "GALLERY_IDS", "SimplexConfig", "face_pinch_points", "make_gallery_set",
    "simplex_centers",
    "max_inscribed_radius_through_point", "simplex_tightness_radius",
    "tightness_formula", "tightness_sweep",
    "RegularityEstimate", "certify_prox_radius", "estimate_report",
    "prox_radius_estimate", "r_S_distance",
    "load_scene", "scene_from_dict",
]
