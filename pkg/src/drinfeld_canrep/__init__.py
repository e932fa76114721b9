"""Exact verification of the decomposition of the canonical representation
of SL_2(F_q) on the Drinfeld curve into the indecomposable modules V^k."""

from .gfq import FieldElement, FieldSpec, build_extension, build_field, field_of_order
from .sl2 import GroupElement, Policy, enumerate_group, generators, subgroup_L
from .vkdecomp import DecompositionReport, verify_theorem

__all__ = [
    "FieldElement",
    "FieldSpec",
    "GroupElement",
    "Policy",
    "DecompositionReport",
    "build_extension",
    "build_field",
    "enumerate_group",
    "field_of_order",
    "generators",
    "subgroup_L",
    "verify_theorem",
]

__version__ = "0.1.0"
