"""Companion matrices and characteristic polynomials."""

from __future__ import annotations

from dataclasses import dataclass
import enum

import numpy as np

from .errors import NonSquare, NotMonic, TooLarge
from .poly import Polynomial, make_poly

__all__ = [
    "Form",
    "CompanionMatrix",
    "frobenius_transpose",
    "frobenius",
    "custom_companion",
    "char_poly",
    "verify_companion",
    "CHAR_POLY_MAX_N",
]

CHAR_POLY_MAX_N = 64


class Form(str, enum.Enum):
    FROBENIUS_TRANSPOSE = "frobenius-transpose"
    FROBENIUS = "frobenius"
    CUSTOM = "custom"


@dataclass(frozen=True, eq=False)
class CompanionMatrix:
    entries: np.ndarray
    form: Form
    source_degree: int

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __repr__(self):
        return f"CompanionMatrix(form={self.form.value}, n={self.n})"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


def _require_monic(p: Polynomial):
    if not p.is_monic:
        raise NotMonic(f"leading coefficient is {p.leading}, expected 1")
    if p.degree < 2:
        raise ValueError("companion matrices need degree >= 2")


def frobenius_transpose(p: Polynomial) -> CompanionMatrix:
    """Ones on the subdiagonal, last column ``(-a0, -a1, ..., -a[n-1])``."""
    _require_monic(p)
    n = p.degree
    m = np.zeros((n, n), dtype=np.complex128)
    m[np.arange(1, n), np.arange(n - 1)] = 1.0
    m[:, -1] = -p.coeffs[:-1]
    return CompanionMatrix(_frozen(m), Form.FROBENIUS_TRANSPOSE, n)


def frobenius(p: Polynomial) -> CompanionMatrix:
    ft = frobenius_transpose(p)
    return CompanionMatrix(_frozen(ft.entries.T), Form.FROBENIUS, p.degree)


def custom_companion(entries) -> CompanionMatrix:
    m = np.asarray(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] < 2:
        raise ValueError("companion matrices need n >= 2")
    return CompanionMatrix(_frozen(m), Form.CUSTOM, m.shape[0])


def _is_upper_hessenberg(a: np.ndarray) -> bool:
    return not np.any(np.tril(a, -2))


def _hessenberg_charpoly(h: np.ndarray) -> np.ndarray:
    """det(xI - H) for upper Hessenberg ``H`` by the leading-minor recurrence.

    With ``p_0 = 1`` and ``p_j`` the characteristic polynomial of the
    leading ``j x j`` block,

        p_j = (x - h[j,j]) p_{j-1} - sum_{i<j} h[i,j] * prod(h[m,m-1], m=i+1..j) * p_{i-1}

    (1-based indices).  Returns ascending coefficients.
    """
    n = h.shape[0]
    polys = [np.array([1.0 + 0j])]
    for j in range(n):
        prev = polys[-1]
        cur = np.zeros(j + 2, dtype=np.complex128)
        cur[1:] += prev
        cur[:-1] -= h[j, j] * prev
        prod = 1.0 + 0j
        for i in range(j - 1, -1, -1):
            prod *= h[i + 1, i]
            if prod == 0:
                break
            if h[i, j] != 0:
                cur[: i + 1] -= h[i, j] * prod * polys[i]
        polys.append(cur)
    return polys[-1]


def _faddeev_leverrier(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[n] = 1.0
    m = np.zeros_like(a)
    ident = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        m = a @ m + coeffs[n - k + 1] * ident
        coeffs[n - k] = -np.trace(a @ m) / k
    return coeffs


def char_poly(m: CompanionMatrix | np.ndarray) -> Polynomial:
    """Monic characteristic polynomial ``det(xI - M)``, ascending order."""
    a = m.entries if isinstance(m, CompanionMatrix) else np.asarray(m, dtype=np.complex128)
    n = a.shape[0]
    if n > CHAR_POLY_MAX_N:
        raise TooLarge(f"char_poly is limited to n <= {CHAR_POLY_MAX_N}, got {n}")
    if _is_upper_hessenberg(a):
        coeffs = _hessenberg_charpoly(a)
    elif _is_upper_hessenberg(a.T):
        coeffs = _hessenberg_charpoly(np.ascontiguousarray(a.T))
    else:
        coeffs = _faddeev_leverrier(a)
    coeffs[-1] = 1.0
    return make_poly(coeffs)


def verify_companion(m: CompanionMatrix, p: Polynomial, tol: float = 1e-12) -> bool:
    """True when ``char_poly(m)`` matches ``p`` coefficientwise to ``tol * (1 + max|a_i|)``."""
    if not p.is_monic:
        raise NotMonic("verify_companion expects a monic polynomial")
    if m.n != p.degree:
        return False
    cp = char_poly(m)
    if cp.degree != p.degree:
        return False
    err = np.max(np.abs(cp.coeffs - p.coeffs))
    return bool(err <= tol * (1.0 + np.max(np.abs(p.coeffs))))
