"""Finite dagger categories and bicategories: validation, fixed points and constructions."""

from .report import SearchSpaceExceeded, StructureError, ValidationReport, Violation
from .fincat import FinCategory, FinFunctor, NatTransform, validate_category, validate_functor
from .dagger1 import (AntiInvolutive, FixedPoint, FlaggedDagger, StrictDagger, coherentify, dagger_equivalent,
                      fixed_points, hermitian_complete, is_univalent, strictify, unitaries, univalentize,
                      validate_anti_involutive, validate_flagged_dagger, validate_strict_dagger)
from .fin2cat import Adjunction, Fin2Category, find_right_adjoint, validate_2category
from .dagger2 import (BiInvolutive, CoherentDagger2Input, Pivotal, strictify_bicategory, validate_bi_involutive,
                      validate_partial_dagger, validate_pivotal)

__version__ = "0.1.0"

__all__ = [
    "SearchSpaceExceeded", "StructureError", "ValidationReport", "Violation",
    "FinCategory", "FinFunctor", "NatTransform", "validate_category", "validate_functor",
    "AntiInvolutive", "FixedPoint", "FlaggedDagger", "StrictDagger", "coherentify", "dagger_equivalent",
    "fixed_points", "hermitian_complete", "is_univalent", "strictify", "unitaries", "univalentize",
    "validate_anti_involutive", "validate_flagged_dagger", "validate_strict_dagger",
    "Adjunction", "Fin2Category", "find_right_adjoint", "validate_2category",
    "BiInvolutive", "CoherentDagger2Input", "Pivotal", "strictify_bicategory", "validate_bi_involutive",
    "validate_partial_dagger", "validate_pivotal",
]
