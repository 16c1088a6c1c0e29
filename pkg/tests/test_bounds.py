import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from khessian.bounds import (
    DegenerateRatioError, ball_volume, beta_integral_exact, binomial_exact, bounds_report,
    bp_bounds, khessian_lower_holder, khessian_lower_holder_power, khessian_lower_simple,
    khessian_upper, khessian_upper_exact, limits_table, log_upper_root, ma_lower,
    ma_lower_exact, ma_upper, ma_upper_exact, sandwich_check, stirling_limit_table,
    volume_extremal_check,
)
from khessian.quadrature import quad_weighted
from khessian.radial import HessianOrder as H


def pascal_row(n):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row


def test_binomial_examples():
    assert binomial_exact(4, 2) == 6
    assert binomial_exact(4, 2) == 6 and binomial_exact(2 * 2, 2) == 6
    assert binomial_exact(60, 30) == pascal_row(60)[30]
    with pytest.raises(ValueError):
        binomial_exact(3, 4)


def test_beta_examples():
    assert beta_integral_exact(2, 3) == Fraction(1, 12)
    assert beta_integral_exact(1, 1) == 1
    assert beta_integral_exact(2, 4) == Fraction(1, 20)
    assert float(beta_integral_exact(2, 4)) == pytest.approx(
        quad_weighted(lambda r: r * (1 - r) ** 3), rel=1e-14)
    with pytest.raises(ValueError):
        beta_integral_exact(0, 2)


@given(st.integers(1, 40), st.integers(1, 40))
def test_beta_symmetry_and_gamma(a, b):
    v = beta_integral_exact(a, b)
    assert v == beta_integral_exact(b, a)
    assert math.log(v) == pytest.approx(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b), rel=1e-12)


def test_fraction_arithmetic_exact():
    rng = random.Random(7)
    for _ in range(50):
        a = rng.getrandbits(400) + 1
        b = rng.getrandbits(400) + 1
        assert Fraction(a, b) * Fraction(b, a) == 1


@pytest.mark.parametrize("n,lo,up", [(2, 6, 10), (3, 20, 35)])
def test_monge_ampere_exact(n, lo, up):
    assert ma_lower_exact(n) == lo and ma_upper_exact(n) == up
    assert ma_lower(n) == pytest.approx(lo ** (1 / n), rel=1e-15)
    assert ma_upper(n) == pytest.approx(up ** (1 / n), rel=1e-15)


def test_monge_ampere_float_values():
    assert ma_lower(2) == pytest.approx(2.4495, abs=1e-4)
    assert ma_lower(3) == pytest.approx(2.7144, abs=1e-4)
    assert ma_upper(2) == pytest.approx(3.1623, abs=1e-4)
    assert ma_upper(3) == pytest.approx(3.2711, abs=1e-4)
    with pytest.raises(ValueError):
        ma_lower_exact(1)


@pytest.mark.parametrize("n", range(2, 41))
def test_ma_upper_is_diagonal_khessian_upper(n):
    assert khessian_upper_exact(H(n, n)) == ma_upper_exact(n)
    assert ma_upper(n) <= 4


def test_khessian_upper_examples():
    exact, root, coarse = khessian_upper(H(2, 3))
    assert exact == 30 and root == pytest.approx(math.sqrt(30))
    exact, root, coarse = khessian_upper(H(1, 2))
    assert (exact, coarse) == (6, 64.0) and root == pytest.approx(6)
    assert root >= 5.7832


@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 25) for k in range(1, n + 1)])
def test_khessian_upper_rewriting(k, n):
    exact, root, coarse = khessian_upper(H(k, n))
    assert exact == Fraction(math.comb(n, k) * math.comb(n + k + 1, n), n - k + 1)
    assert exact <= 2 ** (2 * n + k + 1)
    assert root <= coarse * (1 + 1e-12)


def test_lower_simple_examples():
    assert khessian_lower_simple(H(2, 2)) == pytest.approx(2.0)
    assert khessian_lower_simple(H(1, 10)) == pytest.approx(8.0)
    assert khessian_lower_simple(H(2, 3)) == pytest.approx(4 * 6 ** (-1 / 3))
    assert khessian_lower_simple(H(2, 3)) == pytest.approx(2.201, abs=1e-3)


def test_holder_examples():
    assert khessian_lower_holder_power(H(2, 3)) == pytest.approx(21, abs=1e-9)
    assert khessian_lower_holder(H(2, 3)) == pytest.approx(math.sqrt(21), rel=1e-12)
    assert khessian_lower_holder_power(H(1, 4)) == pytest.approx(8, rel=1e-12)


@pytest.mark.parametrize("n", range(2, 16))
def test_holder_diagonal_equals_ma_lower(n):
    assert khessian_lower_holder(H(n, n)) == pytest.approx(ma_lower(n), rel=1e-10)


@pytest.mark.parametrize("k,n", [(1, 3), (1, 7), (2, 5), (3, 10), (4, 13), (5, 20)])
def test_holder_beta_closed_form(k, n):
    # n/k > 2: substitute x = r^q, q = n/k - 2 -> B(2k/q, k+1) / q
    q = n / k - 2
    den = math.exp(math.lgamma(2 * k / q) + math.lgamma(k + 1) - math.lgamma(2 * k / q + k + 1)) / q
    expected = q**k * math.comb(n - 1, k - 1) / k / den
    assert khessian_lower_holder_power(H(k, n)) == pytest.approx(expected, rel=1e-10)


def test_holder_degenerate_ratio():
    with pytest.raises(DegenerateRatioError):
        khessian_lower_holder(H(2, 4))
    # log variant: int r^(2k-1) ln(1/r)^k dr = k! / (2k)^(k+1)
    for k in (1, 2, 3, 5):
        expected = math.comb(2 * k - 1, k - 1) / k * (2 * k) ** (k + 1) / math.factorial(k)
        got = khessian_lower_holder_power(H(k, 2 * k), log_variant=True)
        assert got == pytest.approx(expected, rel=1e-10)
    with pytest.raises(ValueError):
        khessian_lower_holder(H(2, 3), log_variant=True)


def test_bp_examples():
    g1, g2 = bp_bounds(H(2, 2))
    assert g1 == pytest.approx(2) and g2 == pytest.approx(4)
    for n in range(3, 30):
        g1, g2 = bp_bounds(H(n, n))
        assert g1 == pytest.approx(2) and g2 >= 4
    assert bp_bounds(H(2, 3))[0] == pytest.approx(2 * math.sqrt(3))
    g2 = [bp_bounds(H(n, n))[1] for n in (10, 100, 1000)]
    assert g2[0] < g2[1] < g2[2] < 6
    assert g2[2] == pytest.approx(6, abs=0.05)


@pytest.mark.parametrize("n", [1, 2, 3, 10, 100])
def test_sandwich_check(n):
    assert sandwich_check(n)


def test_sandwich_n2_terms():
    c = math.comb(4, 2)
    assert (16 / 4, c, c * 5 / 3, 16) == (4, 6, 10, 16)


@pytest.mark.parametrize("n", range(1, 20))
def test_ball_volume_against_gamma(n):
    coeff, m, value = ball_volume(n)
    assert m == n // 2
    assert value == pytest.approx(math.pi ** (n / 2) / math.gamma(1 + n / 2), rel=1e-13)
    assert float(coeff) * math.pi**m == pytest.approx(value, rel=1e-13)


def test_ball_volume_examples():
    assert ball_volume(2)[:2] == (1, 1)
    assert ball_volume(3)[:2] == (Fraction(4, 3), 1)
    assert ball_volume(4)[:2] == (Fraction(1, 2), 2)


def test_volume_extremal_examples():
    assert volume_extremal_check(2, math.sqrt(10))
    assert not volume_extremal_check(2, 4.1)
    assert volume_extremal_check(3, 35 ** (1 / 3))
    # evaluate both sides of the n = 3 case directly
    lhs = 35 * (4 * math.pi / 3) ** 2
    rhs = (4 * math.pi) ** 3 / math.gamma(2.5) ** 2
    assert lhs <= rhs


def test_volume_extremal_is_sharp_at_four():
    for n in (2, 5, 30, 301):
        assert volume_extremal_check(n, 4.0)
        assert not volume_extremal_check(n, 4.0 * (1 + 1e-6))


@pytest.mark.parametrize("k,n", [(k, n) for n in range(2, 41) for k in range(1, n + 1)])
def test_lower_never_exceeds_upper(k, n):
    rep = bounds_report(H(k, n))
    assert rep.consistent()
    assert rep.k_upper == pytest.approx(float(rep.k_upper_exact) ** (1 / k), rel=1e-12)


def test_stirling_table():
    rows = stirling_limit_table([H(n, n) for n in range(2, 201)])
    assert rows[0][2] == pytest.approx(math.sqrt(10), rel=1e-13)
    uppers = [u for _, _, u in rows]
    # the roots rise toward 4 from below (each is at most 4)
    assert all(a < b < 4 for a, b in zip(uppers, uppers[1:]))
    # frozen from the log-Gamma evaluation: 4 - upper(200) = 0.0503...
    assert 4 - uppers[-1] == pytest.approx(0.050310767, abs=1e-8)
    assert 4 - log_upper_root(2000, 2000) < 0.01


def test_log_gamma_matches_exact_path():
    for k, n in [(1, 2), (5, 9), (30, 60), (150, 160)]:
        exact, root, _ = khessian_upper(H(k, n))
        assert log_upper_root(k, n) == pytest.approx(root, rel=1e-10)


def test_limits_table():
    rows = limits_table(200)
    assert rows[0][1:3] == pytest.approx((2.0, math.sqrt(10)))
    floors = [r[1] for r in rows]
    gaps = [r[3] for r in rows]
    assert all(a < b for a, b in zip(floors, floors[1:]))
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
    n, lo, up, gap = rows[-1]
    assert n == 200
    assert 4 - up == pytest.approx(0.050310767, abs=1e-8)
    assert 4 - lo == pytest.approx(0.118052198, abs=1e-8)
    with pytest.raises(ValueError):
        limits_table(1)
