"""Complex polynomials stored in ascending coefficient order.

``coeffs[i]`` is the coefficient of ``x**i``, so a degree-``n`` polynomial
has ``n + 1`` coefficients and ``coeffs[n]`` is the leading one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import math

import numpy as np

from .errors import AllZero, ZeroConstantTerm

__all__ = [
    "Polynomial",
    "RootSet",
    "make_poly",
    "monicize",
    "reversal",
    "evaluate",
    "derivative",
]


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Polynomial:
    """Immutable complex polynomial; build it with :func:`make_poly`."""

    coeffs: np.ndarray

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        return complex(self.coeffs[-1])

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __len__(self):
        return len(self.coeffs)

    def __call__(self, z):
        return evaluate(self, z)

    def descending(self) -> np.ndarray:
        """Coefficients highest power first (the usual printed order)."""
        return self.coeffs[::-1].copy()

    def __repr__(self):
        return f"Polynomial(degree={self.degree}, coeffs={self.coeffs.tolist()!r})"


@dataclass(frozen=True, eq=False)
class RootSet:
    """Roots sorted by non-decreasing modulus, with per-root diagnostics."""

    roots: np.ndarray
    residuals: np.ndarray
    converged: np.ndarray = field(default=None)
    iterations: int = 0

    def __post_init__(self):
        if self.converged is None:
            object.__setattr__(self, "converged", np.ones(len(self.roots), dtype=bool))

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.roots)

    def __len__(self):
        return len(self.roots)


def make_poly(coeffs) -> Polynomial:
    """Validate ascending coefficients and trim trailing (high-order) zeros."""
    arr = np.atleast_1d(np.asarray(coeffs, dtype=np.complex128))
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("coefficients must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    nz = np.flatnonzero(arr)
    if nz.size == 0:
        raise AllZero("every coefficient is zero")
    return Polynomial(_frozen(arr[: nz[-1] + 1]))


def monicize(p: Polynomial) -> Polynomial:
    if p.is_monic:
        return p
    out = np.asarray(p.coeffs) / p.coeffs[-1]
    out[-1] = 1.0
    return Polynomial(_frozen(out))


def _exact(c: complex) -> tuple[Fraction, Fraction]:
    return Fraction(c.real), Fraction(c.imag)


def reversal(p: Polynomial) -> Polynomial:
    """Monic reversal: the monic polynomial whose roots are ``1/z`` for each root ``z`` of ``p``.

    For ``p = x**n + a[n-1] x**(n-1) + ... + a[0]`` this is
    ``x**n + (a[1]/a[0]) x**(n-1) + ... + (a[n-1]/a[0]) x + 1/a[0]``.
    """
    a = p.coeffs
    if a[0] == 0:
        raise ZeroConstantTerm("constant coefficient is zero; deflate zero roots first")
    if not p.is_monic:
        p = monicize(p)
        a = p.coeffs
    # each quotient is formed exactly and rounded once
    d = _exact(complex(a[0]))
    den = d[0] * d[0] + d[1] * d[1]
    rev = []
    for c in a[::-1]:
        cr, ci = _exact(complex(c))
        rev.append(complex(float((cr * d[0] + ci * d[1]) / den), float((ci * d[0] - cr * d[1]) / den)))
    rev[-1] = 1.0
    return Polynomial(_frozen(rev))


def evaluate(p: Polynomial, z) -> complex:
    """Evaluate ``p(z)``.

    The Horner recurrence runs in exact rational arithmetic on the binary
    values of the coefficients and of ``z``, and the result is rounded once,
    so the answer is the correctly rounded value of the stored polynomial.
    """
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        acc = 0j
        for c in p.coeffs[::-1]:
            acc = acc * z + complex(c)
        return acc
    zr, zi = _exact(z)
    ar, ai = Fraction(0), Fraction(0)
    for c in p.coeffs[::-1]:
        cr, ci = _exact(complex(c))
        ar, ai = ar * zr - ai * zi + cr, ar * zi + ai * zr + ci
    return complex(float(ar), float(ai))


def derivative(p: Polynomial) -> Polynomial:
    """Termwise derivative; a constant maps to the degree-0 zero polynomial."""
    if p.degree == 0:
        return Polynomial(_frozen([0.0]))
    out = p.coeffs[1:] * np.arange(1, p.degree + 1)
    return Polynomial(_frozen(out))
