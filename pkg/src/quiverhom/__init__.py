"""Exact homological algebra for representations of quivers with relations."""
from .exactla import FieldSpec, Matrix
from .algebra import (
    AlgebraPresentation,
    GroundAlgebra,
    QuiverPresentation,
    build_algebra,
    check_conditions,
    fixture,
    ground_dual_numbers,
    ground_field,
    make_ground,
)
from .modcat import Representation, RepMorphism, proj, simple, inj, s_functor, tensor_k

__all__ = [
    "FieldSpec", "Matrix", "AlgebraPresentation", "GroundAlgebra", "QuiverPresentation", "build_algebra",
    "check_conditions", "fixture", "ground_dual_numbers", "ground_field", "make_ground", "Representation",
    "RepMorphism", "proj", "simple", "inj", "s_functor", "tensor_k",
]
__version__ = "0.1.0"
