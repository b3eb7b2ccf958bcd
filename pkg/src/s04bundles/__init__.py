"""Computational toolkit for four-punctured-sphere bundles over the circle."""

from .fgroup import FreeAutomorphism, fg_fixed_classes, fg_induced, fg_is_inner
from .mcg import (
    MappingClass,
    mcg_common_conjugate_power,
    mcg_conjugate,
    mcg_conjugate_up_to_inversion,
    mcg_eval,
    mcg_is_pseudo_anosov,
)
from .pslz import PslWord, psl_conjugate
from .torus import GroupPresentation, torus_fibered_norm, torus_homology, torus_presentation

__version__ = "0.1.0"

__all__ = [
    "FreeAutomorphism",
    "GroupPresentation",
    "MappingClass",
    "PslWord",
    "fg_fixed_classes",
    "fg_induced",
    "fg_is_inner",
    "mcg_common_conjugate_power",
    "mcg_conjugate",
    "mcg_conjugate_up_to_inversion",
    "mcg_eval",
    "mcg_is_pseudo_anosov",
    "psl_conjugate",
    "torus_fibered_norm",
    "torus_homology",
    "torus_presentation",
]
