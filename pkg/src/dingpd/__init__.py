"""Exact Ding projective dimension of modules and complexes over bound quiver algebras."""

from __future__ import annotations

from .algebra import BoundQuiverAlgebra, algebra_from_doc, build_algebra
from .complexcalc import ChainComplex, complex_from_doc, stalk
from .dingdim import Undetermined, dpd_complex, dpd_functorial, dpd_module, is_ding_projective, rhom
from .repmod import Representation, module_from_doc

__all__ = [
    "BoundQuiverAlgebra",
    "ChainComplex",
    "Representation",
    "Undetermined",
    "algebra_from_doc",
    "build_algebra",
    "complex_from_doc",
    "dpd_complex",
    "dpd_functorial",
    "dpd_module",
    "is_ding_projective",
    "module_from_doc",
    "rhom",
    "stalk",
]
