"""Exact small-ball mass computations, mode preorders and counterexample gallery."""
from .exact import INF, CertifiedInterval, QSqrt, Undecidable, as_interval, compare, decimal_str, exact, exact_str
from .measures import (RCDF, Atomic, Bump, ClippedPolyBump, GeometricCluster, KnotRCDF, Measure, Mixture,
                       PiecewisePolyDensity, ball_mass, rcdf)
from .metric import FiniteMetric, FunnyDiscrete, RealLine, TwoLevelSpace
from .modes import (ModeReport, amf_upward_intersection, build_amf, generalised_mode_check, radius_r_modes,
                    strong_mode_check, sup_ball_mass)
from .preorder import (ComparisonVerdict, RatioLimits, Relation, as_relation, compare_at_radius, compare_limit,
                       compare_liminf_relation, compare_limsup_relation, essential_totality_check,
                       maximal_and_greatest, ratio_limits, transitivity_audit)
from .serialize import MalformedMeasure, dumps, loads

__version__ = "0.1.0"

__all__ = [
    "INF", "CertifiedInterval", "QSqrt", "Undecidable", "as_interval", "compare", "decimal_str", "exact", "exact_str",
    "RCDF", "Atomic", "Bump", "ClippedPolyBump", "GeometricCluster", "KnotRCDF", "Measure", "Mixture",
    "PiecewisePolyDensity", "ball_mass", "rcdf", "FiniteMetric", "FunnyDiscrete", "RealLine", "TwoLevelSpace",
    "ModeReport", "amf_upward_intersection", "build_amf", "generalised_mode_check", "radius_r_modes",
    "strong_mode_check", "sup_ball_mass", "ComparisonVerdict", "RatioLimits", "Relation", "as_relation",
    "compare_at_radius", "compare_limit", "compare_liminf_relation", "compare_limsup_relation",
    "essential_totality_check", "maximal_and_greatest", "ratio_limits", "transitivity_audit",
    "MalformedMeasure", "dumps", "loads",
]
