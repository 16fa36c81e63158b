"""Exact coefficient arithmetic, Laurent polynomials and q-combinatorics."""
from .scalars import QLaurent, QRatio, as_fraction, sdiv, spow, is_zero, q_power, s_power
from .laurent import LaurentPoly, var, const
from .combinat import (
    partitions,
    partitions_in_box,
    dominates,
    dominated_by,
    is_weakly_decreasing,
    q_factorial,
    q_binomial,
    q_pochhammer,
    monomial_symmetric,
    power_sum,
    elementary,
    complete,
    enumerate_gz,
    count_gz_brute,
    pad,
    strip_zeros,
)
from .linalg import solve

__all__ = [
    "QLaurent", "QRatio", "as_fraction", "sdiv", "spow", "is_zero", "q_power", "s_power",
    "LaurentPoly", "var", "const",
    "partitions", "partitions_in_box", "dominates", "dominated_by", "is_weakly_decreasing",
    "q_factorial", "q_binomial", "q_pochhammer", "monomial_symmetric", "power_sum",
    "elementary", "complete", "enumerate_gz", "count_gz_brute", "pad", "strip_zeros", "solve",
]
