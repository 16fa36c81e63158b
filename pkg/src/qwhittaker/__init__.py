"""Exact q-deformed gl(l+1) Whittaker functions by four constructions.

The Gelfand-Zetlin sum, Macdonald polynomials at t = 0, affine Demazure
characters and quantum torus matrix elements, together with the difference
operators and identities that tie them together.
"""
from .corealg import LaurentPoly, QLaurent, QRatio
from .macdonald import SpecPoint, gram_schmidt_macdonald, extend_generalized, macdonald_t0
from .qtoda import whittaker_gz, whittaker_tilde, whittaker_recursive, whittaker_from_macdonald
from .demazure import whittaker_from_demazure
from .qtorus import whittaker_matrix_element
from .serialize import serialize, parse

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly", "QLaurent", "QRatio", "SpecPoint",
    "gram_schmidt_macdonald", "extend_generalized", "macdonald_t0",
    "whittaker_gz", "whittaker_tilde", "whittaker_recursive", "whittaker_from_macdonald",
    "whittaker_from_demazure", "whittaker_matrix_element", "serialize", "parse",
]
