"""Diagonal-similarity balancing, one index at a time in index order.

Each sweep visits ``i = 1..n`` and rescales row ``i`` by ``d_i`` and column
``i`` by ``1/d_i`` with

    d_i = sqrt(off-diagonal column-i sum / off-diagonal row-i sum)

taken on the matrix as already rescaled for indices ``< i``.  Indices with
a zero sum on either side keep ``d_i = 1``.

Two implementations share that rule.  :func:`balance_sweep` works on a
plain matrix.  :func:`balance_scaled` works on a :class:`ScaledMatrix` in
the log2 domain, touching only the nonzero pattern, so powers whose entries
span thousands of binary orders of magnitude balance without overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .powers import ScaledMatrix, log2_entries, lse2

__all__ = [
    "DiagonalScaling",
    "DEFAULT_ITERATIONS",
    "balance_sweep",
    "balance",
    "balance_scaled",
    "log_balance_factors",
]

DEFAULT_ITERATIONS = 20


@dataclass(frozen=True, eq=False)
class DiagonalScaling:
    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=float)
        if np.any(~np.isfinite(d)) or np.any(d <= 0):
            raise ValueError("diagonal scaling entries must be positive and finite")
        object.__setattr__(self, "d", d)

    def matrix(self) -> np.ndarray:
        return np.diag(self.d)

    def apply(self, a) -> np.ndarray:
        """``D A D^-1``."""
        a = np.asarray(a)
        return a * self.d[:, None] / self.d[None, :]


def balance_sweep(a):
    """One full sweep; returns ``(D A D^-1, DiagonalScaling)``."""
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    if a.ndim != 2 or n != a.shape[1] or n < 2:
        raise ValueError("balance_sweep needs a square matrix with n >= 2")
    d = np.ones(n)
    for i in range(n):
        col = np.abs(a[:, i]).sum() - abs(a[i, i])
        row = np.abs(a[i, :]).sum() - abs(a[i, i])
        if col == 0 or row == 0:
            continue
        di = math.sqrt(col / row)
        a[i, :] *= di
        a[:, i] /= di
        d[i] = di
    return a, DiagonalScaling(d)


def balance(a, iterations: int = DEFAULT_ITERATIONS):
    """Apply ``iterations`` sweeps.

    A :class:`ScaledMatrix` is balanced in the log domain and comes back as
    a :class:`ScaledMatrix`; anything else is treated as a plain matrix.
    """
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    if isinstance(a, ScaledMatrix):
        return balance_scaled(a, iterations)
    out = np.array(a, dtype=np.complex128)
    for _ in range(iterations):
        out, _ = balance_sweep(out)
    return out


def log_balance_factors(logs: np.ndarray, iterations: int) -> np.ndarray:
    """log2 of the cumulative diagonal after ``iterations`` sweeps.

    ``logs`` holds entrywise log2 moduli (``-inf`` for zeros).  Only the
    off-diagonal nonzeros are visited, so a sweep costs O(nnz).
    """
    n = logs.shape[0]
    r, c = np.nonzero(np.isfinite(logs))
    off = r != c
    r, c = r[off], c[off]
    lv = logs[r, c]
    by_col = [np.flatnonzero(c == i) for i in range(n)]
    by_row = [np.flatnonzero(r == i) for i in range(n)]
    ld = np.zeros(n)
    for _ in range(iterations):
        for i in range(n):
            ci, ri = by_col[i], by_row[i]
            if ci.size == 0 or ri.size == 0:
                continue
            # current column sum sees d_r / d_i, row sum sees d_i / d_c;
            # the d_i factors cancel into the square root
            num = lse2(lv[ci] + ld[r[ci]])
            den = lse2(lv[ri] - ld[c[ri]])
            if math.isfinite(num) and math.isfinite(den):
                ld[i] = 0.5 * (num - den)
    return ld


def balance_scaled(m: ScaledMatrix, iterations: int = DEFAULT_ITERATIONS) -> ScaledMatrix:
    """Balance the true matrix behind ``m``; the result keeps per-column scales."""
    if iterations < 0:
        raise ValueError("iterations must be >= 0")
    if iterations == 0:
        return m
    logs = log2_entries(m)
    ld = log_balance_factors(logs, iterations)
    new = logs + ld[:, None] - ld[None, :]
    with np.errstate(invalid="ignore"):
        colmax = np.max(np.where(np.isfinite(new), new, -np.inf), axis=0)
    colmax = np.where(np.isfinite(colmax), np.ceil(colmax), 0.0)
    phase = np.where(m.body != 0, np.exp(1j * np.angle(m.body)), 0)
    with np.errstate(invalid="ignore"):
        mag = np.where(np.isfinite(new), np.exp2(new - colmax[None, :]), 0.0)
    top = int(colmax.max())
    shift = colmax.astype(np.int64) - top
    return ScaledMatrix(phase * mag, top, m.k, col_shift=shift)
