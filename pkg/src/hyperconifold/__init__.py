"""Hyperconifold singularities: classification, toric resolutions, local
mirrors and the topology of hyperconifold transitions."""

__version__ = "0.1.0"

from .classify import HyperconifoldClass, canonical_form, diagram_of, exceptional_scan, identify_from_matrix
from .groups import FiniteGroup, identify_group, normal_closure, quotient_group
from .intersect import (
    adjunction_check,
    exceptional_surfaces,
    local_ample_cone,
    projective_resolutions,
    triple_intersections,
    wall_relation,
)
from .mirror import independent_node_search, mirror_nodes, mirror_polynomial
from .resolve import crepant_resolution, enumerate_crepant_resolutions
from .transition import HodgeData, hodge_after, transition_report

__all__ = [
    "FiniteGroup",
    "HodgeData",
    "HyperconifoldClass",
    "adjunction_check",
    "canonical_form",
    "crepant_resolution",
    "diagram_of",
    "enumerate_crepant_resolutions",
    "exceptional_scan",
    "exceptional_surfaces",
    "hodge_after",
    "identify_from_matrix",
    "identify_group",
    "independent_node_search",
    "local_ample_cone",
    "mirror_nodes",
    "mirror_polynomial",
    "normal_closure",
    "projective_resolutions",
    "quotient_group",
    "transition_report",
    "triple_intersections",
    "wall_relation",
]
