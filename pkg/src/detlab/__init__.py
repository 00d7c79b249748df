"""Determinantal ideals over prime fields: Groebner bases, ideal operations,
free resolutions, polynomial matrices and determinantality checks."""

__version__ = "0.1.0"

from .ring import Field, Polynomial, Ring, ParseError, poly, polys
from .ideals import Ideal, equal, ideal, maximal_ideal, mu, saturate
from .matrixlab import PolyMatrix, degree_matrix, is_one_generic
from .resolutions import betti_table, free_resolution, is_acm
from .detcheck import check_good, check_standard, refute_standard_linear

__all__ = ["Field", "Polynomial", "Ring", "ParseError", "poly", "polys", "Ideal", "equal", "ideal",
           "maximal_ideal", "mu", "saturate", "PolyMatrix", "degree_matrix", "is_one_generic",
           "betti_table", "free_resolution", "is_acm", "check_good", "check_standard",
           "refute_standard_linear"]
