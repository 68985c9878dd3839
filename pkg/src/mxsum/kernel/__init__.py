"""Numeric kernel: compensated summation, double-exponential
quadrature, K-Bessel evaluation, hypergeometric series and Hurwitz
zeta. Everything above this layer builds on these primitives.
"""

from .bessel import kv_complex
from .hyper import gamma_real, pfq_series, pochhammer
from .quadrature import QuadratureSpec, integrate
from .summation import (
    KahanSum,
    SeriesSum,
    accelerated_alternating_complex,
    alternating_accelerated_sum,
    sum_terms,
)
from .zeta import bernoulli_even, hurwitz_zeta

__all__ = [
    "KahanSum",
    "SeriesSum",
    "QuadratureSpec",
    "accelerated_alternating_complex",
    "alternating_accelerated_sum",
    "bernoulli_even",
    "gamma_real",
    "hurwitz_zeta",
    "integrate",
    "kv_complex",
    "pfq_series",
    "pochhammer",
    "sum_terms",
]
