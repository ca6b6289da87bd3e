"""Stable rooted trees of projective spaces and their point-configuration cycles."""

from .classes import (
    KunnethClass,
    cycle_class,
    orbit_class,
    orbit_class_deterministic,
    separates_boundary,
    tree_class,
    weight_vectors,
)
from .contraction import ConfigurationCycle, configuration_cycle, contract
from .curves import (
    CrossRatioValue,
    MultilinearForm,
    chow_form_111,
    chow_form_of_cycle,
    forget,
    separates,
    triple_invariant,
)
from .degeneration import FamilyConfiguration, check_limit_compatibility, limit_tree
from .errors import ChowTreesError
from .exact import HyperplaneDirection, ProjectivePoint, RationalPoly
from .group import Configuration, GroupElement, act, canonicalize, stabilizer_dimension
from .trees import StableTree, Vertex, canonical_form, random_tree, validate

__all__ = [
    "ChowTreesError",
    "Configuration",
    "ConfigurationCycle",
    "CrossRatioValue",
    "FamilyConfiguration",
    "GroupElement",
    "HyperplaneDirection",
    "KunnethClass",
    "MultilinearForm",
    "ProjectivePoint",
    "RationalPoly",
    "StableTree",
    "Vertex",
    "act",
    "canonical_form",
    "canonicalize",
    "check_limit_compatibility",
    "chow_form_111",
    "chow_form_of_cycle",
    "configuration_cycle",
    "contract",
    "cycle_class",
    "forget",
    "limit_tree",
    "orbit_class",
    "orbit_class_deterministic",
    "random_tree",
    "separates",
    "separates_boundary",
    "stabilizer_dimension",
    "tree_class",
    "triple_invariant",
    "validate",
    "weight_vectors",
]
