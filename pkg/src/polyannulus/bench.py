"""Benchmark polynomials and the harness that fills their bound tables.

Generators work exactly (integers, Fractions, Gaussian integers) and round
to double precision once at the end.  The exact coefficients stay
available so the oracle can compute reference radii for the polynomial
itself rather than for its rounded copy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import math

from .balance import DEFAULT_ITERATIONS
from .bounds import DEFAULT_KS, BoundTable, bound_table
from .fixtures import EXAMPLE1, EXAMPLE2
from .oracle import AberthConfig, spectral_radius_reference
from .poly import Polynomial, make_poly
from .powers import ALL_NORMS, Norm

__all__ = [
    "EXPERIMENTS",
    "ExperimentSpec",
    "laguerre_exact",
    "gen_laguerre",
    "toeplitz_exact",
    "toeplitz_band",
    "gen_toeplitz_charpoly",
    "ones_exact",
    "gen_ones",
    "lsr1_exact",
    "gen_lsr1",
    "exact_coefficients",
    "reference_radii",
    "run_experiment",
]

TABLE_KS = (1, 2, 3, 4, 5, 10, 100)
EXPERIMENTS = ("laguerre100", "toeplitz100", "ones50", "lsr1", "example1", "example2")

# offset of each diagonal (negative below the main one) and its value
TOEPLITZ_OFFSETS = (-2, -1, 0, 1, 2, 3, 4, 5, 6)
TOEPLITZ_VALUES = (-1j, -3, 0, 10, 1, 1j, 28, -3, 1)
TOEPLITZ_N = 100


# -- Laguerre ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _laguerre_int(n: int) -> tuple[int, ...]:
    """Integer coefficients (ascending) of ``L_n`` from the three-term recurrence."""
    prev, cur = [1], [1, -1]
    if n == 0:
        return tuple(prev)
    for i in range(1, n):
        nxt = [0] * (i + 2)
        for j, c in enumerate(cur):
            nxt[j] += (2 * i + 1) * c
            nxt[j + 1] -= c
        for j, c in enumerate(prev):
            nxt[j] -= i * i * c
        prev, cur = cur, nxt
    return tuple(cur)


def laguerre_exact(n: int, monic: bool = True) -> list:
    if not 1 <= n <= 120:
        raise ValueError("Laguerre degree must be in 1..120")
    c = _laguerre_int(n)
    if not monic:
        return list(c)
    return [Fraction(x, c[-1]) for x in c]


def gen_laguerre(n: int) -> Polynomial:
    return make_poly([float(x) for x in laguerre_exact(n)])


# -- Toeplitz ---------------------------------------------------------------------


def toeplitz_band(n: int = TOEPLITZ_N) -> list[dict]:
    """Row-wise sparse Gaussian-integer entries ``{col: (re, im)}`` of the banded matrix."""
    rows = []
    for i in range(n):
        row = {}
        for off, v in zip(TOEPLITZ_OFFSETS, TOEPLITZ_VALUES):
            j = i + off
            v = complex(v)
            if 0 <= j < n and v != 0:
                row[j] = (int(v.real), int(v.imag))
        rows.append(row)
    return rows


def _gmul(a, b):
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _gdiv(a, b):
    d = b[0] * b[0] + b[1] * b[1]
    return (a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d


def _banded_det_shifted(band: list[dict], z: int):
    """Exact ``det(z I - A)`` by elimination without pivoting.

    Valid when every pivot is nonzero, which holds for real ``z`` large
    enough that ``z I - A`` is diagonally dominant.
    """
    n = len(band)
    rows = []
    for i, row in enumerate(band):
        r = {j: (Fraction(-re), Fraction(-im)) for j, (re, im) in row.items()}
        re, im = r.get(i, (Fraction(0), Fraction(0)))
        r[i] = (re + z, im)
        rows.append(r)
    lower = max(i - min(row) for i, row in enumerate(band) if row)
    det = (Fraction(1), Fraction(0))
    for j in range(n):
        piv = rows[j][j]
        if piv == (0, 0):
            raise ZeroDivisionError(f"zero pivot at column {j} for z={z}")
        det = _gmul(det, piv)
        for i in range(j + 1, min(n, j + lower + 1)):
            if j not in rows[i]:
                continue
            f = _gdiv(rows[i].pop(j), piv)
            for c, v in rows[j].items():
                if c > j:
                    fv = _gmul(f, v)
                    old = rows[i].get(c, (0, 0))
                    rows[i][c] = (old[0] - fv[0], old[1] - fv[1])
    return det


def _interpolate(xs: list[int], ys: list[tuple]) -> list[tuple]:
    """Exact Newton divided differences, returned as ascending monomial coefficients."""
    m = len(xs)
    c = [tuple(Fraction(v) for v in y) for y in ys]
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            h = xs[i] - xs[i - j]
            c[i] = ((c[i][0] - c[i - 1][0]) / h, (c[i][1] - c[i - 1][1]) / h)
    poly = [c[-1]]
    for i in range(m - 2, -1, -1):
        new = [(Fraction(0), Fraction(0))] * (len(poly) + 1)
        for d, v in enumerate(poly):
            new[d + 1] = (new[d + 1][0] + v[0], new[d + 1][1] + v[1])
            new[d] = (new[d][0] - v[0] * xs[i], new[d][1] - v[1] * xs[i])
        new[0] = (new[0][0] + c[i][0], new[0][1] + c[i][1])
        poly = new
    return poly


@lru_cache(maxsize=None)
def toeplitz_exact() -> tuple[tuple[int, int], ...]:
    """Gaussian-integer coefficients (ascending) of ``det(xI - A)`` for the banded Toeplitz ``A``."""
    band = toeplitz_band()
    n = len(band)
    # Gershgorin: every z above the largest absolute row sum keeps zI - A dominant
    z0 = 1 + max(sum(abs(complex(*v)) for v in row.values()) for row in band)
    z0 = int(math.ceil(z0))
    xs = list(range(z0, z0 + n + 1))
    ys = [_banded_det_shifted(band, z) for z in xs]
    coeffs = _interpolate(xs, ys)
    out = []
    for re, im in coeffs:
        if re.denominator != 1 or im.denominator != 1:
            raise ArithmeticError("characteristic polynomial should have integer coefficients")
        out.append((int(re), int(im)))
    return tuple(out)


def gen_toeplitz_charpoly() -> Polynomial:
    return make_poly([complex(float(re), float(im)) for re, im in toeplitz_exact()])


# -- (x - 1)^n -------------------------------------------------------------------


def ones_exact(n: int) -> list[int]:
    if not 1 <= n <= 64:
        raise ValueError("degree must be in 1..64")
    return [math.comb(n, i) * (-1) ** (n - i) for i in range(n + 1)]


def gen_ones(n: int) -> Polynomial:
    return make_poly([float(c) for c in ones_exact(n)])


# -- LSR1 ---------------------------------------------------------------------------


def lsr1_exact(a=10**20) -> list[Fraction]:
    """``(x**50 + 1)(x**2 + a x + 1/a)`` with ``a`` taken at its exact binary value."""
    a = Fraction(a)
    if a <= 0:
        raise ValueError("a must be positive")
    c = [Fraction(0)] * 53
    for base in (0, 50):
        c[base] += 1 / a
        c[base + 1] += a
        c[base + 2] += 1
    return c


def gen_lsr1(a=1e20) -> Polynomial:
    return make_poly([float(c) for c in lsr1_exact(a)])


# -- harness -------------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentSpec:
    name: str
    ks: tuple = TABLE_KS
    norms: tuple = (Norm.ONE,)
    balance_iters: int = DEFAULT_ITERATIONS
    headers: bool = True

    def __post_init__(self):
        if self.name not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.name!r}; choose from {', '.join(EXPERIMENTS)}")
        ks = tuple(int(k) for k in self.ks)
        if not ks or min(ks) < 1:
            raise ValueError("ks must be nonempty and >= 1")
        object.__setattr__(self, "ks", ks)
        object.__setattr__(self, "norms", tuple(Norm.parse(w) for w in self.norms))
        if self.balance_iters < 0:
            raise ValueError("balance_iters must be >= 0")

    @classmethod
    def default(cls, name: str, **kw) -> "ExperimentSpec":
        if name in ("example1", "example2"):
            base = dict(ks=(1,) if name == "example1" else DEFAULT_KS, norms=ALL_NORMS, balance_iters=3)
        elif name == "laguerre100":
            base = dict(balance_iters=3)
        else:
            base = {}
        base.update({k: v for k, v in kw.items() if v is not None})
        return cls(name, **base)


def exact_coefficients(name: str) -> list:
    if name == "laguerre100":
        return laguerre_exact(100)
    if name == "toeplitz100":
        return list(toeplitz_exact())
    if name == "ones50":
        return ones_exact(50)
    if name == "lsr1":
        return lsr1_exact(10**20)
    if name == "example1":
        return [int(c.real) for c in EXAMPLE1.coeffs]
    if name == "example2":
        return [int(c.real) for c in EXAMPLE2.coeffs]
    raise ValueError(f"unknown experiment {name!r}")


def polynomial(name: str) -> Polynomial:
    if name == "laguerre100":
        return gen_laguerre(100)
    if name == "toeplitz100":
        return gen_toeplitz_charpoly()
    if name == "ones50":
        return gen_ones(50)
    if name == "lsr1":
        return gen_lsr1(1e20)
    if name == "example1":
        return EXAMPLE1
    if name == "example2":
        return EXAMPLE2
    raise ValueError(f"unknown experiment {name!r}")


# working precision for the reference radii; the multiple root of (x-1)^50
# only resolves to cluster radius 2**(-prec/50), hence the larger value
_HEADER_PREC = {"ones50": 640}


@lru_cache(maxsize=None)
def reference_radii(name: str) -> tuple[float, float]:
    """(largest, smallest) root modulus of the exact benchmark polynomial."""
    prec = _HEADER_PREC.get(name, 256)
    cfg = AberthConfig(tol=None, prec=prec, max_iters=2000, strict=True)
    return spectral_radius_reference(exact_coefficients(name), cfg)


def run_experiment(spec: ExperimentSpec) -> BoundTable:
    table = bound_table(polynomial(spec.name), spec.ks, spec.norms, spec.balance_iters)
    table.name = spec.name
    if spec.headers:
        rho, inv = reference_radii(spec.name)
        table.headers = {"rho_c1": rho, "inv_rho_c2": inv}
    return table
