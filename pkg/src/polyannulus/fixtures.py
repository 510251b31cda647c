"""Literal matrices and polynomials used by the comparison tables and tests."""

from __future__ import annotations

import numpy as np

from .companion import CompanionMatrix, custom_companion, frobenius_transpose
from .poly import Polynomial, make_poly

__all__ = [
    "EXAMPLE1",
    "EXAMPLE2",
    "SPARSE8",
    "l5_matrix",
    "sparse8_l5",
    "example2_l5",
    "pair_transpose",
    "pair_distinct",
    "PAIR_DISTINCT_POLY",
]

# x^4 - x^3 - 2x^2 + 6x - 4, roots 1, 1 +- i, -2
EXAMPLE1 = make_poly([-4, 6, -2, -1, 1])
# x^8 + 8x^7 + 14x^6 - 28x^5 - 81x^4 - 8x^3 - 14x^2 + 28x + 80
EXAMPLE2 = make_poly([80, 28, -14, -8, -81, -28, 14, 8, 1])
# x^8 - 0.1x^7 - 0.1x^6 - 0.3x^5 - 0.1x^4 - 0.5x^3 - 0.1x^2 - 0.1x - 0.1
SPARSE8 = make_poly([-0.1, -0.1, -0.1, -0.5, -0.1, -0.3, -0.1, -0.1, 1])


def l5_matrix(p: Polynomial) -> CompanionMatrix:
    """The 8x8 companion matrix ``L5`` of a monic degree-8 polynomial.

    Rows 1-5 carry superdiagonal ones, rows 6-7 hold ``-a7`` and ``-a6`` in
    column 6 next to their superdiagonal one, and row 8 is
    ``(-a0, ..., -a5, 0, 0)``.
    """
    if p.degree != 8 or not p.is_monic:
        raise ValueError("l5_matrix expects a monic degree-8 polynomial")
    a = p.coeffs
    m = np.zeros((8, 8), dtype=np.complex128)
    for i in range(7):
        m[i, i + 1] = 1.0
    m[5, 5] = -a[7]
    m[6, 5] = -a[6]
    m[7, :6] = -a[:6]
    return custom_companion(m)


def sparse8_l5() -> CompanionMatrix:
    return l5_matrix(SPARSE8)


def example2_l5() -> CompanionMatrix:
    return l5_matrix(EXAMPLE2)


def pair_transpose() -> tuple[CompanionMatrix, CompanionMatrix]:
    """A Frobenius-transpose matrix and its transpose."""
    c = frobenius_transpose(make_poly([0.75, -0.5, 0.5, 1]))
    return c, custom_companion(c.entries.T)


# x^3 - (3/4)x^2 - (1/2)x + 1/4
PAIR_DISTINCT_POLY = make_poly([0.25, -0.5, -0.75, 1])


def pair_distinct() -> tuple[CompanionMatrix, CompanionMatrix]:
    """Two different companion matrices of ``PAIR_DISTINCT_POLY``."""
    c = frobenius_transpose(PAIR_DISTINCT_POLY)
    l = custom_companion([[0, 1, 0], [0, 0.75, 1], [-0.25, 0.5, 0]])
    return c, l
