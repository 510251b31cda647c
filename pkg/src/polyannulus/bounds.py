"""Annulus bounds on polynomial roots from norms of companion-matrix powers.

For a monic ``p`` with ``a0 != 0`` let ``C1`` be its companion matrix and
``C2`` the companion matrix of its monic reversal.  For any ``k`` and any
submultiplicative norm ``N``

    U_k = N(C1**k)**(1/k) >= max |root|,
    L_k = N(C2**k)**(-1/k) <= min |root|,

and both tighten toward the extreme moduli as ``k`` grows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .balance import DEFAULT_ITERATIONS, balance_scaled
from .companion import CompanionMatrix, Form, frobenius, frobenius_transpose
from .errors import NotMonic, ZeroConstantTerm
from .poly import Polynomial, make_poly, monicize, reversal
from .powers import ALL_NORMS, Norm, ScaledMatrix, companion_power, root_norm

__all__ = [
    "DEFAULT_KS",
    "Annulus",
    "BoundTable",
    "SpreadBounds",
    "DeflationRecord",
    "deflate_zero_roots",
    "companion_pair",
    "upper_bound",
    "lower_bound",
    "annulus",
    "bound_table",
    "spread_bounds",
    "bk",
]

DEFAULT_KS = (1, 2, 8, 16, 32, 64)


@dataclass(frozen=True)
class Annulus:
    r_lo: float
    r_hi: float
    k1: int = 1
    k2: int = 1
    norms: tuple = ()
    balance_iters: int = 0

    def __post_init__(self):
        if not (0 <= self.r_lo <= self.r_hi):
            raise ValueError(f"invalid annulus radii ({self.r_lo}, {self.r_hi})")

    def contains(self, z, rtol: float = 0.0) -> bool:
        r = abs(z)
        return self.r_lo * (1 - rtol) <= r <= self.r_hi * (1 + rtol)


@dataclass
class BoundTable:
    """Cells keyed by ``(matrix, k, norm, balanced)``; ``matrix`` is ``"C1"`` or ``"C2"``.

    C1 cells hold upper bounds ``U_k``, C2 cells hold lower bounds ``L_k``.
    """

    ks: tuple
    norms: tuple
    balance_iters: int
    cells: dict = field(default_factory=dict)
    headers: dict = field(default_factory=dict)
    name: str = ""

    def get(self, matrix: str, k: int, which, balanced: bool) -> float:
        return self.cells[(matrix, k, Norm.parse(which), balanced)]

    def upper(self, k, which=Norm.ONE, balanced=False) -> float:
        return self.get("C1", k, which, balanced)

    def lower(self, k, which=Norm.ONE, balanced=False) -> float:
        return self.get("C2", k, which, balanced)

    def rows(self) -> list[dict]:
        out = []
        for (matrix, k, which, balanced), value in sorted(
            self.cells.items(), key=lambda kv: (kv[0][1], kv[0][0], kv[0][2].value, kv[0][3])
        ):
            out.append(
                {"k": k, "norm": which.value, "balanced": balanced, "matrix": matrix, "value": value}
            )
        return out


@dataclass(frozen=True)
class SpreadBounds:
    abs_spread_upper: float
    root_spread_upper: float
    distance_bracket: tuple
    asymptotic_flag: bool = True
    upper: float = float("nan")
    lower: float = float("nan")


@dataclass(frozen=True)
class DeflationRecord:
    zero_root_multiplicity: int
    deflated: Polynomial


def deflate_zero_roots(p: Polynomial) -> DeflationRecord:
    """Factor ``p = x**m * deflated`` with ``deflated(0) != 0``."""
    if not p.is_monic:
        raise NotMonic("deflate_zero_roots expects a monic polynomial")
    nz = np.flatnonzero(p.coeffs)
    m = int(nz[0])
    if m == 0:
        return DeflationRecord(0, p)
    return DeflationRecord(m, make_poly(p.coeffs[m:]))


def _check(p: Polynomial) -> Polynomial:
    if p.coeffs[0] == 0:
        raise ZeroConstantTerm("constant coefficient is zero; deflate zero roots first")
    if p.degree < 2:
        raise ValueError("bounds need degree >= 2")
    return p if p.is_monic else monicize(p)


def _builder(form):
    form = Form(form) if not isinstance(form, Form) else form
    if form is Form.FROBENIUS_TRANSPOSE:
        return frobenius_transpose
    if form is Form.FROBENIUS:
        return frobenius
    raise ValueError("bounds are built from the frobenius-transpose or frobenius form")


def companion_pair(p: Polynomial, form=Form.FROBENIUS_TRANSPOSE) -> tuple[CompanionMatrix, CompanionMatrix]:
    """``(C1, C2)``: companion matrices of ``p`` and of its monic reversal."""
    p = _check(p)
    build = _builder(form)
    return build(p), build(reversal(p))


def _power(c: CompanionMatrix, k: int, balance_iters: int) -> ScaledMatrix:
    m = companion_power(c, k)
    return balance_scaled(m, balance_iters) if balance_iters else m


def upper_bound(p: Polynomial, k: int, which=Norm.INF, balance_iters: int = 0,
                form=Form.FROBENIUS_TRANSPOSE) -> float:
    c1, _ = companion_pair(p, form)
    return root_norm(_power(c1, k, balance_iters), which)


def lower_bound(p: Polynomial, k: int, which=Norm.INF, balance_iters: int = 0,
                form=Form.FROBENIUS_TRANSPOSE) -> float:
    _, c2 = companion_pair(p, form)
    return 1.0 / root_norm(_power(c2, k, balance_iters), which)


def _norms(norms) -> tuple:
    if norms is None:
        return ALL_NORMS
    if isinstance(norms, (str, Norm)):
        norms = [norms]
    out = tuple(dict.fromkeys(Norm.parse(w) for w in norms))
    if not out:
        raise ValueError("at least one norm is required")
    return out


def annulus(p: Polynomial, k1: int = 1, k2: int | None = None, norms=None,
            balance_iters: int = 0, form=Form.FROBENIUS_TRANSPOSE) -> Annulus:
    """Best annulus over the requested norms: min of upper bounds, max of lower bounds."""
    k2 = k1 if k2 is None else k2
    norms = _norms(norms)
    c1, c2 = companion_pair(p, form)
    m1 = _power(c1, k1, balance_iters)
    m2 = _power(c2, k2, balance_iters)
    hi = min(root_norm(m1, w) for w in norms)
    lo = max(1.0 / root_norm(m2, w) for w in norms)
    # both radii bound the same roots, so lo <= hi holds mathematically;
    # clamp rounding at the degenerate annulus
    lo = min(lo, hi)
    return Annulus(lo, hi, k1, k2, tuple(w.value for w in norms), balance_iters)


def bound_table(p: Polynomial, ks: Iterable[int] = DEFAULT_KS, norms=None,
                balance_iters: int = DEFAULT_ITERATIONS, form=Form.FROBENIUS_TRANSPOSE) -> BoundTable:
    """Unbalanced cells always; balanced cells too when ``balance_iters > 0``."""
    ks = tuple(int(k) for k in ks)
    if not ks or min(ks) < 1:
        raise ValueError("ks must be a nonempty list of integers >= 1")
    norms = _norms(norms)
    c1, c2 = companion_pair(p, form)
    table = BoundTable(ks, norms, balance_iters)
    for k in ks:
        for matrix, c in (("C1", c1), ("C2", c2)):
            m = companion_power(c, k)
            variants = [(False, m)]
            if balance_iters:
                variants.append((True, balance_scaled(m, balance_iters)))
            for balanced, mm in variants:
                for w in norms:
                    r = root_norm(mm, w)
                    table.cells[(matrix, k, w, balanced)] = r if matrix == "C1" else 1.0 / r
    return table


def spread_bounds(p: Polynomial, k1: int, k2: int | None = None, which=Norm.INF,
                  balance_iters: int = 0, form=Form.FROBENIUS_TRANSPOSE) -> SpreadBounds:
    """Upper bounds on the modulus spread and on the root spread, plus the distance bracket.

    The bracket ``(max(0, U - L), U + L)`` for ``|root_max - root_min|`` is only
    guaranteed for large enough powers, hence ``asymptotic_flag``.
    """
    k2 = k1 if k2 is None else k2
    u = upper_bound(p, k1, which, balance_iters, form)
    lo = lower_bound(p, k2, which, balance_iters, form)
    return SpreadBounds(
        abs_spread_upper=u - lo,
        root_spread_upper=2.0 * u,
        distance_bracket=(max(0.0, u - lo), u + lo),
        asymptotic_flag=True,
        upper=u,
        lower=lo,
    )


def bk(c, k: int) -> float:
    """Largest of the one, infinity and Frobenius root-norms of ``c**k``."""
    m = companion_power(c, k)
    return max(root_norm(m, w) for w in ALL_NORMS)
