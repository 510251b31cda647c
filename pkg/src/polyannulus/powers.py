"""Overflow-safe integer powers of companion matrices and log2-domain norms.

A :class:`ScaledMatrix` stores a matrix as ``2**exponent * body * diag(2**col_shift)``.
Most matrices carry ``col_shift = 0``; the per-column shifts let the
structured companion power (and its balanced form) keep columns whose
magnitudes differ by far more than the double-precision range, as happens
for ``C1**k`` of a polynomial with coefficients near ``1e165``.

All norms are returned as base-2 logarithms so nothing overflows even when
the true norm is ``10**2000``.
"""

from __future__ import annotations

from dataclasses import dataclass
import enum
import math

import numpy as np

from .companion import CompanionMatrix, Form

__all__ = [
    "Norm",
    "LogMagnitude",
    "ScaledMatrix",
    "scaled",
    "companion_power",
    "norm",
    "root_norm",
    "log2_entries",
    "lse2",
]


class Norm(str, enum.Enum):
    ONE = "one"
    INF = "inf"
    FRO = "fro"

    @classmethod
    def parse(cls, value) -> "Norm":
        if isinstance(value, Norm):
            return value
        return cls(str(value).lower())


ALL_NORMS = (Norm.ONE, Norm.INF, Norm.FRO)


class LogMagnitude(float):
    """A base-2 logarithm of a nonnegative quantity; ``-inf`` encodes zero.

    When the magnitude was computed directly it is kept alongside, so
    ``value`` does not pick up rounding from the ``log2``/``exp2`` round trip.
    """

    def __new__(cls, log2_value, direct: float | None = None):
        obj = super().__new__(cls, log2_value)
        obj._direct = direct
        return obj

    @property
    def log2_value(self) -> float:
        return float(self)

    @property
    def direct(self) -> float | None:
        return self._direct

    @property
    def value(self) -> float:
        """The magnitude itself (may overflow to ``inf``)."""
        if self._direct is not None:
            return self._direct
        with np.errstate(over="ignore"):
            return float(np.exp2(float(self)))


def _ldexp_c(z: np.ndarray, e) -> np.ndarray:
    return np.ldexp(z.real, e) + 1j * np.ldexp(z.imag, e)


@dataclass(frozen=True, eq=False)
class ScaledMatrix:
    """True matrix ``2**exponent * body * diag(2**col_shift)`` representing ``c**k``.

    ``structured`` marks the Krylov layout of a Frobenius-transpose power
    with ``k < n``: the first ``n - k`` columns are the shifted identity.
    """

    body: np.ndarray
    exponent: int
    k: int
    col_shift: np.ndarray | None = None
    structured: bool = False

    @property
    def n(self) -> int:
        return self.body.shape[0]

    def column_log2_scale(self) -> np.ndarray:
        """Per-column log2 scale factor applied on top of ``body``."""
        cs = np.zeros(self.n) if self.col_shift is None else self.col_shift.astype(float)
        return cs + self.exponent

    def to_dense(self) -> np.ndarray:
        """The true matrix in plain complex128; overflows to ``inf`` if it must."""
        cs = np.zeros(self.n, dtype=np.int64) if self.col_shift is None else self.col_shift
        with np.errstate(over="ignore"):
            return _ldexp_c(self.body, (cs + self.exponent)[None, :].astype(np.int64))


def _normalize(body: np.ndarray):
    """Scale so the largest entry modulus lies in [1/2, 1); returns (body, exponent)."""
    m = float(np.max(np.abs(body))) if body.size else 0.0
    if m == 0.0 or not math.isfinite(m):
        return body, 0
    e = math.frexp(m)[1]
    return _ldexp_c(body, -e), e


def scaled(a, k: int = 1) -> ScaledMatrix:
    """Wrap a plain matrix as a normalized :class:`ScaledMatrix`."""
    a = np.array(a.entries if isinstance(a, CompanionMatrix) else a, dtype=np.complex128)
    body, e = _normalize(a)
    return ScaledMatrix(body, e, k)


def _krylov_power(c: CompanionMatrix, k: int) -> ScaledMatrix:
    """``C1**k`` for a Frobenius-transpose ``C1`` and ``k < n``.

    With ``v_0 = e_n`` and ``v_{m+1} = C1 v_m`` the power is
    ``[e_{k+1}, ..., e_n, v_1, ..., v_k]``.  Each ``v_m`` costs one
    shift-and-axpy, and each is normalized on its own, so columns with
    wildly different scales survive.
    """
    a = c.entries
    n = c.n
    neg = a[:, -1]  # (-a0, ..., -a[n-1])
    v = np.zeros(n, dtype=np.complex128)
    v[-1] = 1.0
    body = np.zeros((n, n), dtype=np.complex128)
    cexp = np.zeros(n, dtype=np.int64)
    idx = np.arange(n - k)
    body[idx + k, idx] = 1.0
    e = 0
    for m in range(k):
        w = np.empty(n, dtype=np.complex128)
        w[0] = 0.0
        w[1:] = v[:-1]
        w += v[-1] * neg
        w, s = _normalize(w)
        e += s
        v = w
        body[:, n - k + m] = w
        cexp[n - k + m] = e
    top = int(cexp.max())
    return ScaledMatrix(body, top, k, col_shift=cexp - top, structured=True)


# a normalized factor times a base below 2**960 cannot overflow for n < 2**60
_SAFE_LO, _SAFE_HI = 2.0**-960, 2.0**960


def _maybe_normalize(a: np.ndarray):
    """Rescale the base matrix only when a product with it could overflow.

    Rescaling a companion matrix whose coefficients reach ``1e165`` would
    push its unit subdiagonal down to ``1e-165``, and products of such
    entries underflow to zero; the raw matrix keeps them.
    """
    m = float(np.max(np.abs(a))) if a.size else 0.0
    if m == 0.0 or _SAFE_LO <= m <= _SAFE_HI:
        return a, 0
    return _normalize(a)


def _sequential_power(a: np.ndarray, k: int) -> ScaledMatrix:
    """``a**k`` by ``k - 1`` left multiplications; each product is renormalized."""
    base, eb = _maybe_normalize(np.asarray(a, dtype=np.complex128))
    p, e = _normalize(base)
    e += eb
    for _ in range(k - 1):
        p, s = _normalize(base @ p)
        e += s + eb
    return ScaledMatrix(p, e, k)


def _binary_power(a: np.ndarray, k: int) -> ScaledMatrix:
    """Square-and-multiply with renormalization after every product."""
    b, eb = _maybe_normalize(np.asarray(a, dtype=np.complex128))
    r, er = None, 0
    while k:
        if k & 1:
            if r is None:
                r, er = b.copy(), eb
            else:
                r, s = _normalize(r @ b)
                er += eb + s
        k >>= 1
        if k:
            b, s = _normalize(b @ b)
            eb = 2 * eb + s
    return ScaledMatrix(r, er, 0)


def companion_power(c, k: int, method: str | None = None) -> ScaledMatrix:
    """``c**k`` as a :class:`ScaledMatrix`.

    ``method`` is ``"krylov"``, ``"sequential"`` or ``"binary"``.  The
    default uses the Krylov layout for a Frobenius-transpose matrix with
    ``k < n`` and sequential multiplication otherwise.  Sequential products
    track the power more faithfully than repeated squaring when tiny
    entries underflow against the dominant ones.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not isinstance(c, CompanionMatrix):
        from .companion import custom_companion

        c = custom_companion(c)
    if method is None:
        method = "krylov" if (c.form is Form.FROBENIUS_TRANSPOSE and k < c.n) else "sequential"
    if method == "krylov":
        if c.form is not Form.FROBENIUS_TRANSPOSE or k >= c.n:
            raise ValueError("the Krylov layout needs a Frobenius-transpose matrix and k < n")
        return _krylov_power(c, k)
    if method == "sequential":
        return _sequential_power(c.entries, k)
    if method == "binary":
        out = _binary_power(c.entries, k)
        return ScaledMatrix(out.body, out.exponent, k)
    raise ValueError(f"unknown method {method!r}")


def lse2(x: np.ndarray) -> float:
    """``log2(sum(2**x))`` without overflow; empty or all ``-inf`` gives ``-inf``."""
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return -math.inf
    m = float(np.max(x))
    if not math.isfinite(m):
        return m
    return m + math.log2(float(np.sum(np.exp2(x - m))))


def log2_entries(m: ScaledMatrix) -> np.ndarray:
    """Entrywise log2 modulus of the true matrix (``-inf`` for zeros)."""
    with np.errstate(divide="ignore"):
        return np.log2(np.abs(m.body)) + m.column_log2_scale()[None, :]


def _log_norm_from_logs(logs: np.ndarray, which: Norm) -> float:
    if which is Norm.ONE:
        return max(lse2(logs[:, j]) for j in range(logs.shape[1]))
    if which is Norm.INF:
        return max(lse2(logs[i, :]) for i in range(logs.shape[0]))
    return 0.5 * lse2(2.0 * logs.ravel())


def _structured_log_norm(m: ScaledMatrix, which: Norm) -> float:
    # the shift block contributes exact ones: n - k unit columns, one unit per
    # row below row k, and n - k unit squares to the Frobenius sum
    n, k = m.n, m.k
    tail = m.body[:, n - k:]
    scale = m.column_log2_scale()[n - k:]
    with np.errstate(divide="ignore"):
        logs = np.log2(np.abs(tail)) + scale[None, :]
    if which is Norm.ONE:
        return max(0.0, max(lse2(logs[:, j]) for j in range(k)))
    if which is Norm.INF:
        best = -math.inf
        for i in range(n):
            row = logs[i]
            if i >= k:
                row = np.append(row, 0.0)
            best = max(best, lse2(row))
        return best
    return 0.5 * lse2(np.append(2.0 * logs.ravel(), math.log2(n - k)))


# column scales inside this window make the plain matrix safe to form and sum
_DIRECT_LOG2 = 900


def _direct_norm(m: ScaledMatrix, which: Norm) -> float | None:
    scale = m.column_log2_scale()
    if m.n == 0 or np.max(np.abs(scale)) > _DIRECT_LOG2:
        return None
    a = np.abs(m.to_dense())
    if which is Norm.ONE:
        return float(a.sum(axis=0).max())
    if which is Norm.INF:
        return float(a.sum(axis=1).max())
    return float(np.sqrt((a * a).sum()))


def norm(m: ScaledMatrix, which) -> LogMagnitude:
    """log2 of the one, infinity or Frobenius norm of the true matrix.

    Moderately scaled matrices are summed directly, so integer-valued norms
    come out exact; anything else is summed in the log2 domain.
    """
    which = Norm.parse(which)
    direct = _direct_norm(m, which)
    if direct is not None and 0.0 < direct < math.inf:
        return LogMagnitude(math.log2(direct), direct)
    if m.structured:
        return LogMagnitude(_structured_log_norm(m, which))
    return LogMagnitude(_log_norm_from_logs(log2_entries(m), which))


def root_norm(m: ScaledMatrix, which) -> float:
    """``N(c**k)**(1/k)``, evaluated as ``2**(log2 N / k)``."""
    if m.k < 1:
        raise ValueError("ScaledMatrix.k must be >= 1")
    n = norm(m, which)
    if n.direct is not None:
        return n.direct if m.k == 1 else float(n.direct ** (1.0 / m.k))
    return float(np.exp2(float(n) / m.k))
