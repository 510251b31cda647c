"""Ehrlich-Aberth simultaneous root finder used as ground truth.

Two paths share one iteration:

* double precision on a :class:`Polynomial`, vectorized with numpy;
* arbitrary precision with mpmath, fed exact coefficients (ints,
  Fractions, Gaussian-integer pairs) when ill-conditioned roots are needed
  to many digits.

Starting points come from the Newton polygon of ``log|a_i|``: each edge of
the upper convex hull from ``i1`` to ``i2`` contributes ``i2 - i1`` points on
a circle whose radius is the edge's slope.  This places starting guesses at
the right scale even when root moduli span forty orders of magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

import mpmath
import numpy as np

from .errors import DidNotConverge
from .poly import Polynomial, RootSet, make_poly

__all__ = ["AberthConfig", "aberth_roots", "spectral_radius_reference", "newton_polygon_start"]

_ANGLE_OFFSET = 0.4


@dataclass(frozen=True)
class AberthConfig:
    """``tol`` is the relative residual target ``|p(z)| <= tol * sum|a_i||z|^i``.

    ``tol=None`` picks a few ulps of the working precision.  ``prec`` is the
    mpmath precision in bits; ``None`` runs in double precision.
    ``init_radius_hint`` replaces the Newton-polygon start with equally
    spaced points on a circle of that radius.  ``strict`` raises
    :class:`DidNotConverge` instead of returning flagged roots.
    """

    tol: float | None = 1e-12
    max_iters: int = 500
    init_radius_hint: float | None = None
    prec: int | None = None
    strict: bool = False

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")


def _hull_starts(logabs: list[float], n: int, offset: float = _ANGLE_OFFSET) -> np.ndarray:
    pts = [i for i in range(n + 1) if math.isfinite(logabs[i])]
    hull: list[int] = []
    for i in pts:
        while len(hull) >= 2:
            i1, i2 = hull[-2], hull[-1]
            if (logabs[i2] - logabs[i1]) * (i - i1) <= (logabs[i] - logabs[i1]) * (i2 - i1):
                hull.pop()
            else:
                break
        hull.append(i)
    z = []
    for i1, i2 in zip(hull, hull[1:]):
        m = i2 - i1
        r = math.exp((logabs[i1] - logabs[i2]) / m)
        ang = 2 * np.pi * np.arange(m) / m + 2 * np.pi * i1 / n + offset
        z.extend(r * np.exp(1j * ang))
    return np.array(z, dtype=np.complex128)


def newton_polygon_start(coeffs) -> np.ndarray:
    """Starting guesses from the Newton polygon of the (nonzero-constant) coefficients."""
    logabs = []
    for c in coeffs:
        a = abs(_to_mpc(c)) if isinstance(c, tuple) else abs(c)
        logabs.append(float(mpmath.log(a)) if a else -math.inf)
    return _hull_starts(logabs, len(coeffs) - 1)


def _circle_start(n: int, r: float) -> np.ndarray:
    return r * np.exp(1j * (2 * np.pi * np.arange(n) / n + _ANGLE_OFFSET))


# -- double precision ---------------------------------------------------------


def _newton_ratio(a: np.ndarray, z: np.ndarray):
    """``p/p'``, ``|p|`` and ``sum |a_i||z|^i`` at each ``z``.

    For ``|z| > 1`` the reversed polynomial is evaluated at ``y = 1/z`` so
    Horner never overflows: with ``r(y) = y**n p(1/y)``,
    ``p/p' = z / (n - y r'(y)/r(y))``.  Residual and scale pick up the
    factor ``|z|**n`` and may overflow to ``inf`` together, which the
    convergence test treats as a ratio.
    """
    n = len(a) - 1
    big = np.abs(z) > 1
    ratio = np.empty_like(z)
    res = np.empty(z.shape)
    scale = np.empty(z.shape)
    for mask, coef in ((~big, a), (big, a[::-1])):
        if not mask.any():
            continue
        x = z[mask] if coef is a else 1.0 / z[mask]
        ax = np.abs(x)
        p = np.full(x.shape, coef[-1])
        dp = np.zeros_like(x)
        s = np.full(x.shape, abs(coef[-1]))
        for c in coef[-2::-1]:
            dp = dp * x + p
            p = p * x + c
            s = s * ax + abs(c)
        if coef is a:
            ratio[mask] = p / dp
            res[mask] = np.abs(p)
            scale[mask] = s
        else:
            ratio[mask] = (1.0 / x) / (n - x * dp / p)
            # keep the reversed-domain values: |p(z)| = |r(y)| |z|^n and the
            # scale carries the same factor, so their quotient is unchanged
            res[mask] = np.abs(p)
            scale[mask] = s
    return ratio, res, scale


def _aberth_double(a: np.ndarray, z: np.ndarray, tol: float, max_iters: int):
    n = len(a) - 1
    conv = np.zeros(n, dtype=bool)
    it = 0
    for it in range(1, max_iters + 1):
        idx = np.flatnonzero(~conv)
        if idx.size == 0:
            return z, conv, it - 1
        zz = z[idx]
        with np.errstate(all="ignore"):
            ratio, res, scale = _newton_ratio(a, zz)
            ok = res <= tol * scale
            diff = zz[:, None] - z[None, :]
            diff[np.arange(idx.size), idx] = np.inf
            s = (1.0 / diff).sum(axis=1)
            w = ratio / (1.0 - ratio * s)
        w[ok | ~np.isfinite(w)] = 0.0
        z = z.copy()
        z[idx] = zz - w
        conv[idx[ok]] = True
    return z, conv, it


# -- extended precision -------------------------------------------------------


def _to_mpc(c):
    if isinstance(c, tuple):
        re, im = c
        return mpmath.mpc(_to_mpf(re), _to_mpf(im))
    if isinstance(c, (complex, np.complexfloating)):
        return mpmath.mpc(c.real, c.imag)
    return mpmath.mpc(_to_mpf(c))


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, (np.floating, np.integer)):
        x = x.item()
    return mpmath.mpf(x)


def _aberth_mp(a: list, z: list, tol, max_iters: int):
    n = len(a) - 1
    absa = [abs(c) for c in a]
    conv = [False] * n
    it = 0
    for it in range(1, max_iters + 1):
        active = [i for i in range(n) if not conv[i]]
        if not active:
            return z, conv, it - 1
        new = list(z)
        for i in active:
            x = z[i]
            ax = abs(x)
            p = a[-1]
            dp = mpmath.mpc(0)
            s = absa[-1]
            for c, ac in zip(a[-2::-1], absa[-2::-1]):
                dp = dp * x + p
                p = p * x + c
                s = s * ax + ac
            if abs(p) <= tol * s:
                conv[i] = True
                continue
            if dp == 0:
                continue
            ratio = p / dp
            acc = mpmath.mpc(0)
            for j in range(n):
                if j != i:
                    d = x - z[j]
                    if d != 0:
                        acc += 1 / d
            new[i] = x - ratio / (1 - ratio * acc)
        z = new
    return z, conv, it


def _mp_residual(a: list, x):
    p = a[-1]
    for c in a[-2::-1]:
        p = p * x + c
    return p


# -- public API -----------------------------------------------------------------


def _split_zero_roots(coeffs: list):
    m = 0
    while m < len(coeffs) - 1 and coeffs[m] == 0:
        m += 1
    return m, coeffs[m:]


def aberth_roots(p, cfg: AberthConfig | None = None) -> RootSet:
    """All roots of ``p``, sorted by modulus.

    ``p`` is a :class:`Polynomial` or a sequence of ascending coefficients.
    Exact entries (ints, Fractions, ``(re, im)`` pairs) are kept exact until
    they enter the working precision, so pass them with ``cfg.prec`` set to
    get roots of the exact polynomial rather than of its double rounding.
    Zero roots are split off first and returned exactly.
    """
    cfg = cfg or AberthConfig()
    coeffs = list(p.coeffs) if isinstance(p, Polynomial) else list(p)
    if not coeffs or all(c == 0 for c in coeffs):
        raise ValueError("polynomial is identically zero")
    while coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) < 2:
        raise ValueError("degree must be >= 1")
    m, rest = _split_zero_roots(coeffs)
    n = len(rest) - 1

    if cfg.prec is None:
        a = np.array([complex(_to_mpc(c)) if isinstance(c, tuple) else complex(c) for c in rest])
        a = a / a[-1]
        tol = cfg.tol if cfg.tol is not None else 4 * n * np.finfo(float).eps
        if n == 0:
            roots, conv, iters = np.zeros(0, complex), np.zeros(0, bool), 0
        else:
            z0 = (_circle_start(n, cfg.init_radius_hint) if cfg.init_radius_hint
                  else newton_polygon_start(a))
            roots, conv, iters = _aberth_double(a, z0, tol, cfg.max_iters)
        poly = make_poly(a)
        with np.errstate(all="ignore"):
            residual = np.array([abs(np.polyval(poly.coeffs[::-1], z)) for z in roots])
    else:
        with mpmath.workprec(cfg.prec):
            a = [_to_mpc(c) for c in rest]
            lead = a[-1]
            a = [c / lead for c in a]
            tol = (mpmath.mpf(cfg.tol) if cfg.tol is not None
                   else mpmath.mpf(2) ** (-cfg.prec + 4) * n)
            if n == 0:
                zs, convl, iters = [], [], 0
            else:
                start = (_circle_start(n, cfg.init_radius_hint) if cfg.init_radius_hint
                         else newton_polygon_start(rest))
                zs, convl, iters = _aberth_mp(a, [mpmath.mpc(complex(s)) for s in start],
                                              tol, cfg.max_iters)
            roots = np.array([complex(z) for z in zs], dtype=np.complex128)
            conv = np.array(convl, dtype=bool)
            residual = np.array([float(abs(_mp_residual(a, z))) for z in zs])

    roots = np.concatenate([np.zeros(m, complex), roots])
    conv = np.concatenate([np.ones(m, bool), conv])
    residual = np.concatenate([np.zeros(m), residual])
    order = np.argsort(np.abs(roots), kind="stable")
    out = RootSet(roots[order], residual[order], conv[order], iters)
    if cfg.strict and not out.all_converged:
        raise DidNotConverge(
            f"{int((~out.converged).sum())} of {len(out)} roots unconverged after {iters} iterations",
            partial=out,
        )
    return out


def spectral_radius_reference(p, cfg: AberthConfig | None = None) -> tuple[float, float]:
    """(largest root modulus, smallest root modulus); the latter is ``1/rho(C2)``."""
    cfg = cfg or AberthConfig(strict=True)
    if not cfg.strict:
        cfg = AberthConfig(cfg.tol, cfg.max_iters, cfg.init_radius_hint, cfg.prec, True)
    coeffs = list(p.coeffs) if isinstance(p, Polynomial) else list(p)
    if coeffs[0] == 0:
        raise ValueError("constant coefficient must be nonzero")
    rs = aberth_roots(p, cfg)
    mod = rs.moduli
    return float(mod.max()), float(mod.min())
