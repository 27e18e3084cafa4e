"""Named example measures with machine-checked expected facts."""
from __future__ import annotations

from .antichain import (MAX_LEVEL, ResourceLimit, dense_antichain_components, designated_radii,
                        make_countable_space_antichain, make_dense_antichain)
from .base import Fact, FactReport, FactResult, GalleryItem, verify_expected_facts
from .discrete import FunnyDomain, TwoLevelDomain, make_discrete_no_mode, make_two_level_no_mode, two_level_radii
from .dyadic import (BinaryExpansion, DyadicPoint, InsufficientPrecision, dyadic_irrationality_exponent_estimate,
                     dyadic_irrationality_measure, dyadic_points, nth_prime, prime_index, primes_up_to)
from .figures import figure_rows, ratio_rows, to_csv
from .line import (coprime_oscillation, make_limsup_nontransitive, make_uniform_witnesses, make_appendixB_examples,
                   make_bimodal_hiding, make_oscillation_pair, make_rcdf_family, make_rcdf_profile,
                   make_upward_closure_a, make_upward_closure_b, make_upward_closure_examples, oscillation_alpha,
                   rcdf_density, rcdf_knot_value, rcdf_pattern, truncation_radius)

REGISTRY = {
    "oscillation": (make_oscillation_pair, "two incomparable maximal points, no greatest point"),
    "discrete-no-mode": (make_discrete_no_mode, "atoms on a discrete space with no radius-1 mode"),
    "two-level": (make_two_level_no_mode, "segments in slices, no radius-r mode for small r"),
    "bimodal-hiding": (make_bimodal_hiding, "a strong mode that is never a radius-r mode"),
    "rcdf-family": (make_rcdf_family, "oscillating square-root profiles with coprime periods"),
    "dense-antichain": (make_dense_antichain, "every dyadic rational in an antichain"),
    "countable-antichain-atomic": (lambda: make_countable_space_antichain("atomic"),
                                   "two incomparable points on a countable set (atoms, open balls)"),
    "countable-antichain-triangle": (lambda: make_countable_space_antichain("triangle"),
                                     "the same with triangle bumps (closed balls)"),
    "upward-closure-a": (make_upward_closure_a, "an upward closure that is not closed"),
    "upward-closure-b": (make_upward_closure_b, "an unbounded upward closure"),
    "limsup-nontransitive": (make_limsup_nontransitive, "the limsup relation is not transitive"),
    "uniform-witnesses": (make_uniform_witnesses, "uniform density: witnesses for the Kuratowski limit relations"),
}


def list_items() -> list:
    return [(k, v[1]) for k, v in REGISTRY.items()]


def get_item(item_id: str, **params) -> GalleryItem:
    if item_id not in REGISTRY:
        raise KeyError(f"unknown gallery id {item_id!r}")
    return REGISTRY[item_id][0](**params)


__all__ = [
    "GalleryItem", "Fact", "FactResult", "FactReport", "verify_expected_facts", "REGISTRY", "list_items", "get_item",
    "make_oscillation_pair", "make_discrete_no_mode", "make_two_level_no_mode", "make_bimodal_hiding",
    "make_rcdf_family", "make_dense_antichain", "make_countable_space_antichain", "make_upward_closure_examples",
    "make_upward_closure_a", "make_upward_closure_b", "make_appendixB_examples", "make_limsup_nontransitive",
    "make_uniform_witnesses", "dyadic_irrationality_measure", "dyadic_irrationality_exponent_estimate",
    "BinaryExpansion", "DyadicPoint", "dyadic_points", "nth_prime", "prime_index", "primes_up_to",
    "InsufficientPrecision", "ResourceLimit", "MAX_LEVEL", "figure_rows", "ratio_rows", "to_csv",
    "make_rcdf_profile", "truncation_radius", "rcdf_pattern", "rcdf_knot_value", "rcdf_density",
    "coprime_oscillation", "oscillation_alpha", "designated_radii", "dense_antichain_components",
    "FunnyDomain", "TwoLevelDomain", "two_level_radii",
]
