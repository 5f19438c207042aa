"""Hessian varieties of homogeneous forms: forward computation and recovery."""
from .mpoly import HomogPoly, GradedSubspace, format_poly, parse_poly
from .forward import hessian_variety, ideal_graded_piece
from .recover3 import recover_cubic, fiber_h31, involution_iota
from .recover4 import recover_quartic, recover_h41
from .waring import DiagonalForm, image_polynomial, fiber_enumerate

__version__ = "0.1.0"
