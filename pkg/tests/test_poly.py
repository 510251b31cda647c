from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from polyannulus.errors import AllZero, ZeroConstantTerm
from polyannulus.fixtures import EXAMPLE1, EXAMPLE2
from polyannulus.oracle import aberth_roots
from polyannulus.poly import derivative, evaluate, make_poly, monicize, reversal

from conftest import match_roots, monic_polys


def test_make_poly_degree_and_trim():
    p = make_poly([-4, 6, -2, -1, 1])
    assert p.degree == 4 and p.is_monic
    assert make_poly([-1, 0, 1]).degree == 2
    assert make_poly([1, 2, 0, 0]).degree == 1


def test_make_poly_rejects_all_zero_and_nonfinite():
    with pytest.raises(AllZero):
        make_poly([0, 0, 0])
    with pytest.raises(ValueError):
        make_poly([1, np.nan])
    with pytest.raises(ValueError):
        make_poly([])


def test_coeffs_are_read_only():
    with pytest.raises(ValueError):
        EXAMPLE1.coeffs[0] = 3


def test_monicize():
    assert monicize(make_poly([-2, 0, 2])) == make_poly([-1, 0, 1])
    assert monicize(EXAMPLE1) is EXAMPLE1


def test_reversal_example1():
    q = reversal(EXAMPLE1)
    assert np.array_equal(q.coeffs, [-0.25, 0.25, 0.5, -1.5, 1])


def test_reversal_self_reciprocal():
    assert reversal(make_poly([-1, 0, 1])) == make_poly([-1, 0, 1])


def test_reversal_example2_against_exact_fractions():
    a = [Fraction(int(c.real)) for c in EXAMPLE2.coeffs]
    exact = [1 / a[0]] + [a[i] / a[0] for i in range(7, 0, -1)] + [Fraction(1)]
    assert exact[:3] == [Fraction(1, 80), Fraction(1, 10), Fraction(7, 40)]
    assert exact[-2] == Fraction(7, 20)
    q = reversal(EXAMPLE2)
    assert np.array_equal(q.coeffs, np.array([float(x) for x in exact], dtype=complex))


def test_reversal_zero_constant():
    with pytest.raises(ZeroConstantTerm):
        reversal(make_poly([0, 1, 1]))


def test_evaluate_roots_and_values():
    assert evaluate(EXAMPLE1, 1) == 0
    assert evaluate(make_poly([-1, 0, 1]), 0) == -1
    # the largest root is -4 (the printed coefficients give p(4) = 204000)
    assert evaluate(EXAMPLE2, -4) == 0
    assert evaluate(EXAMPLE2, -3 + 1j) == 0
    assert EXAMPLE1(1 + 1j) == 0


def test_evaluate_is_correctly_rounded():
    # (x - 1)^2 near x = 1 cancels catastrophically in plain Horner
    p = make_poly([1, -2, 1])
    z = 1 + 2.0**-30
    assert evaluate(p, z) == 2.0**-60


def test_derivative():
    assert derivative(make_poly([-1, 0, 1])) == make_poly([0, 2])
    d0 = derivative(make_poly([5]))
    assert d0.degree == 0 and d0.coeffs[0] == 0
    assert derivative(EXAMPLE1) == make_poly([6, -4, -3, 4])


@given(monic_polys(max_degree=10))
def test_reversal_involution(p):
    rr = reversal(reversal(p))
    eps = np.finfo(float).eps
    scale = np.maximum(np.abs(p.coeffs), np.abs(rr.coeffs))
    assert np.all(np.abs(rr.coeffs - p.coeffs) <= 4 * eps * scale + 1e-300)


def test_reversal_involution_exact_on_dyadic_fixture():
    p = make_poly([0.5, -0.25, 2, 1])
    assert reversal(reversal(p)) == p


@given(monic_polys(max_degree=10))
def test_reversal_roots_are_reciprocal(p):
    r = aberth_roots(p).roots
    q = aberth_roots(reversal(p)).roots
    assert match_roots(1 / r, q) < 1e-8


@given(monic_polys(max_degree=8), monic_polys(min_degree=1, max_degree=1))
def test_evaluate_monicize_scaling(p, z):
    lead = 3 - 2j
    raw = make_poly(p.coeffs * lead)
    zv = complex(z.coeffs[0])
    lhs = evaluate(monicize(raw), zv)
    rhs = evaluate(raw, zv) / lead
    assert abs(lhs - rhs) <= 4 * np.finfo(float).eps * max(abs(rhs), 1e-300) + 1e-15 * max(
        1.0, float(np.sum(np.abs(p.coeffs) * abs(zv) ** np.arange(p.degree + 1)))
    )
