import numpy as np
import pytest

from polyannulus.balance import DiagonalScaling, balance, balance_scaled, balance_sweep
from polyannulus.companion import char_poly, frobenius_transpose
from polyannulus.fixtures import EXAMPLE2
from polyannulus.oracle import aberth_roots
from polyannulus.poly import reversal
from polyannulus.powers import companion_power, root_norm, scaled

from conftest import match_roots


def test_two_by_two_hand_value():
    b, d = balance_sweep([[0, 4], [1, 0]])
    assert np.array_equal(b, [[0, 2], [2, 0]])
    assert np.array_equal(d.d, [0.5, 1.0])
    assert np.allclose(d.apply([[0, 4], [1, 0]]), b)


def test_symmetric_magnitudes_unchanged(rng):
    a = rng.normal(size=(5, 5))
    a = a + a.T
    b, d = balance_sweep(a)
    assert np.allclose(d.d, 1.0)
    assert np.allclose(b, a)


def test_zero_guard():
    a = np.array([[1.0, 2.0, 0.0], [0.0, 3.0, 0.0], [0.0, 5.0, 4.0]])
    b, d = balance_sweep(a)
    assert d.d[0] == 1.0 and d.d[2] == 1.0


def test_zero_iterations_is_identity(rng):
    a = rng.normal(size=(4, 4))
    assert np.array_equal(balance(a, 0), a)


def test_example2_three_sweeps():
    b = balance(frobenius_transpose(EXAMPLE2).entries, 3)
    assert np.abs(b).sum(1).max() == pytest.approx(14.74, abs=5e-3)
    assert np.sqrt((np.abs(b) ** 2).sum()) == pytest.approx(12.11, abs=5e-3)
    g = balance(frobenius_transpose(reversal(EXAMPLE2)).entries, 3)
    assert 1 / np.abs(g).sum(1).max() == pytest.approx(0.56, abs=5e-3)


def test_diagonal_scaling_rejects_nonpositive():
    with pytest.raises(ValueError):
        DiagonalScaling(np.array([1.0, 0.0]))


def test_log_domain_matches_literal_sweep(rng):
    for _ in range(100):
        n = int(rng.integers(2, 9))
        a = rng.normal(size=(n, n)) * np.exp(rng.normal(scale=4, size=(n, n)))
        a[rng.random((n, n)) < 0.3] = 0
        for t in (1, 3, 20):
            lit = balance(a, t)
            log = balance_scaled(scaled(a), t).to_dense()
            assert np.allclose(log, lit, rtol=1e-10, atol=1e-12 * np.abs(lit).max())


def test_log_domain_on_structured_power():
    c = frobenius_transpose(EXAMPLE2)
    for k in (1, 2, 5, 7):
        m = companion_power(c, k)
        lit = balance(np.linalg.matrix_power(c.entries, k), 20)
        assert np.allclose(balance_scaled(m, 20).to_dense(), lit, rtol=1e-10, atol=1e-12)


def test_similarity_preserves_roots(rng):
    for _ in range(50):
        n = int(rng.integers(4, 9))
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        ref = aberth_roots(char_poly(a)).roots
        for t in (1, 3, 20):
            got = aberth_roots(char_poly(balance(a, t))).roots
            assert match_roots(got, ref) < 1e-6


def test_pattern_preserved(rng):
    a = rng.normal(size=(6, 6))
    a[rng.random((6, 6)) < 0.4] = 0
    b = balance(a, 20)
    assert np.array_equal(b == 0, a == 0)


def test_determinant_preserved(rng):
    for _ in range(20):
        a = rng.normal(size=(4, 4))
        b = balance(a, 3)
        assert abs(np.linalg.det(b)) == pytest.approx(abs(np.linalg.det(a)), rel=1e-10)


def test_balanced_never_worse_on_example2():
    c1 = frobenius_transpose(EXAMPLE2)
    c2 = frobenius_transpose(reversal(EXAMPLE2))
    for k in (1, 2, 8, 16, 32, 64):
        for w in ("one", "inf", "fro"):
            m1, m2 = companion_power(c1, k), companion_power(c2, k)
            assert root_norm(balance_scaled(m1, 3), w) <= root_norm(m1, w)
            assert root_norm(balance_scaled(m2, 3), w) <= root_norm(m2, w)
