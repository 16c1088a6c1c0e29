"""Closed-form eigenvalue bounds for the unit ball, in exact rationals.

Every bound is a k-th root of a rational (or of a Beta-type integral).  The
rational part is kept exact with :class:`fractions.Fraction`; roots are taken
in log space so that huge factorials never overflow a float.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, exp, factorial, lgamma, log, log1p, pi
from typing import Optional

import numpy as np

from .quadrature import quad_weighted
from .radial import HessianOrder

# relative guard for comparisons between float projections of bounds
REL_GUARD = 1e-12


def _log_rational(q):
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of a nonpositive rational")
    return log(q.numerator) - log(q.denominator)


def rational_root(q, k):
    """Float value of ``q ** (1/k)`` for an exact positive rational ``q``."""
    return exp(_log_rational(q) / k)


def binomial_exact(n, k):
    if not 0 <= k <= n:
        raise ValueError(f"binomial({n}, {k}) out of range")
    return Fraction(comb(n, k))


def beta_integral_exact(a, b):
    """``int_0^1 r^(a-1) (1-r)^(b-1) dr = (a-1)!(b-1)!/(a+b-1)!``."""
    if a < 1 or b < 1 or int(a) != a or int(b) != b:
        raise ValueError("Beta arguments must be positive integers")
    return Fraction(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1))


def _check_dim(n):
    if n < 2:
        raise ValueError(f"n={n} must be at least 2")


def ma_lower_exact(n):
    """Lower bound for the n-th power of the Monge-Ampere eigenvalue: C(2n, n)."""
    _check_dim(n)
    return binomial_exact(2 * n, n)


def ma_lower(n):
    return rational_root(ma_lower_exact(n), n)


def ma_upper_exact(n):
    """Upper bound ``C(2n, n) (2n+1)/(n+1)`` for the n-th power."""
    _check_dim(n)
    return binomial_exact(2 * n, n) * Fraction(2 * n + 1, n + 1)


def ma_upper(n):
    return rational_root(ma_upper_exact(n), n)


def ma_lower_floor(n):
    """The closed lower envelope ``4 (2n)^(-1/n)``."""
    return 4.0 * (2.0 * n) ** (-1.0 / n)


def khessian_upper_exact(order):
    k, n = order.k, order.n
    return Fraction(factorial(n + k + 1),
                    factorial(k) * factorial(k + 1) * factorial(n - k + 1))


def khessian_upper(order):
    """Cone-limit upper bound: ``(exact k-th power, its k-th root, 2^((2n+k+1)/k))``."""
    exact = khessian_upper_exact(order)
    k, n = order.k, order.n
    return exact, rational_root(exact, k), 2.0 ** ((2 * n + k + 1) / k)


def khessian_lower_simple(order):
    k, n = order.k, order.n
    floor = ma_lower_floor(n)
    p = n / k
    if p > 2:
        return max((p - 2) * p ** ((k - 1) / k), floor)
    return floor


class DegenerateRatioError(ValueError):
    """The Hoelder lower bound degenerates when n/k = 2."""


def _holder_power(order, tol):
    k, n = order.k, order.n
    p = Fraction(n, k)
    if p == 2:
        raise DegenerateRatioError(
            f"n/k = 2 for (k, n) = ({k}, {n}); use log_variant=True")
    pf = float(p)
    if p > 2:
        q = pf - 2.0
        # r^(n-1) (r^(2-p) - 1)^k rewritten to avoid overflow at r -> 0
        den = quad_weighted(lambda r: r ** (2 * k - 1) * (1.0 - r**q) ** k, tol)
    else:
        den = quad_weighted(lambda r: r ** (n - 1) * (r ** (2.0 - pf) - 1.0) ** k, tol)
    num = (pf - 2.0) ** k * comb(n - 1, k - 1) / k
    return num / den


def _holder_log_power(order, tol):
    k, n = order.k, order.n
    den = quad_weighted(
        lambda r: r ** (n - 1) * np.log(1.0 / np.maximum(r, 1e-300)) ** k, tol)
    return comb(n - 1, k - 1) / (k * den)


def khessian_lower_holder_power(order, tol=1e-12, log_variant=False):
    """k-th power of the Hoelder lower bound (quadrature for the weight integral)."""
    if log_variant:
        if Fraction(order.n, order.k) != 2:
            raise ValueError("the logarithmic variant applies only at n/k = 2")
        return _holder_log_power(order, tol)
    return _holder_power(order, tol)


def khessian_lower_holder(order, tol=1e-12, log_variant=False):
    return khessian_lower_holder_power(order, tol, log_variant) ** (1.0 / order.k)


def bp_bounds(order):
    """Maximum-principle bounds ``(gamma1, gamma2)`` from the literature."""
    k, n = order.k, order.n
    g1 = 2.0 * rational_root(Fraction(comb(n, k)), k)
    inner = Fraction(factorial(n - 1), factorial(k) * factorial(n - k)) \
        * Fraction(n + 2 * k, k + 1) ** (k + 1)
    g2 = 2.0 * rational_root(inner, k)
    return g1, g2


def sandwich_check(n):
    """Exact check of ``4^n/(2n) <= C(2n,n) <= C(2n,n)(2n+1)/(n+1) <= 4^n``."""
    if n < 1:
        raise ValueError("n must be positive")
    c = Fraction(comb(2 * n, n))
    top = Fraction(4) ** n
    return top / (2 * n) <= c <= c * Fraction(2 * n + 1, n + 1) <= top


def _gamma_one_plus_half_sq(n):
    """``Gamma(1 + n/2)^2`` as ``(rational, power of pi)``."""
    m, odd = divmod(n, 2)
    if not odd:
        return Fraction(factorial(m)) ** 2, 0
    # Gamma(m + 3/2) = (2m+1)!! / 2^(m+1) * sqrt(pi)
    dfact = 1
    for j in range(1, 2 * m + 2, 2):
        dfact *= j
    return Fraction(dfact, 2 ** (m + 1)) ** 2, 1


def ball_volume(n):
    """``|B_1^n| = coeff * pi^(n // 2)`` with ``coeff`` exact."""
    if n < 1:
        raise ValueError("n must be positive")
    m, odd = divmod(n, 2)
    if odd:
        dfact = 1
        for j in range(1, 2 * m + 2, 2):
            dfact *= j
        coeff = Fraction(2 ** (m + 1), dfact)
    else:
        coeff = Fraction(1, factorial(m))
    return coeff, m, exp(_log_rational(coeff) + m * log(pi))


def volume_extremal_check(n, lam, rel_slack=1e-9):
    """Is ``lam^n |B|^2 <= (4 pi)^n / Gamma(1 + n/2)^2``?

    Powers of pi are cancelled exactly before a single float comparison in
    log space.
    """
    coeff, _, _ = ball_volume(n)
    gsq, _ = _gamma_one_plus_half_sq(n)
    # lhs = lam^n coeff^2 pi^(2m), rhs = 4^n pi^(n - gpi) / gsq, and 2m = n - gpi
    log_lhs = n * log(lam) + 2 * _log_rational(coeff)
    log_rhs = n * log(4.0) - _log_rational(gsq)
    return log_lhs <= log_rhs + log1p(rel_slack)


def log_upper_root(k, n):
    """Log-Gamma evaluation of the k-th root of the cone-limit upper bound."""
    return exp((lgamma(n + k + 2) - lgamma(k + 1) - lgamma(k + 2) - lgamma(n - k + 2)) / k)


def stirling_limit_table(pairs):
    return [(o.k, o.n, log_upper_root(o.k, o.n)) for o in pairs]


def limits_table(n_max):
    """Diagonal table ``(n, lower_floor, upper_root, gap)`` for ``n = 2..n_max``."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    rows = []
    for n in range(2, n_max + 1):
        lo = ma_lower_floor(n)
        up = log_upper_root(n, n)
        rows.append((n, lo, up, up - lo))
    return rows


@dataclass(frozen=True)
class BoundsReport:
    order: HessianOrder
    ma_lower: Optional[float]
    ma_upper: Optional[float]
    k_upper_exact: Fraction
    k_upper: float
    k_upper_coarse: float
    k_lower_simple: float
    k_lower_holder: Optional[float]
    bp_lower: float
    bp_upper: float

    def lower_bounds(self):
        vals = [self.ma_lower, self.k_lower_simple, self.k_lower_holder, self.bp_lower]
        return [v for v in vals if v is not None]

    def upper_bounds(self):
        vals = [self.ma_upper, self.k_upper, self.k_upper_coarse, self.bp_upper]
        return [v for v in vals if v is not None]

    @property
    def best_lower(self):
        return max(self.lower_bounds())

    @property
    def best_upper(self):
        return min(self.upper_bounds())

    def consistent(self):
        """Every lower bound is below every upper bound (up to float guard)."""
        return self.best_lower <= self.best_upper * (1 + REL_GUARD)

    def contains(self, lam, slack=1e-6):
        return bool(self.best_lower - slack <= lam <= self.best_upper + slack)


def bounds_report(order, tol=1e-12):
    k, n = order.k, order.n
    exact, root, coarse = khessian_upper(order)
    try:
        holder = khessian_lower_holder(order, tol)
    except DegenerateRatioError:
        holder = None
    g1, g2 = bp_bounds(order)
    return BoundsReport(
        order=order,
        ma_lower=ma_lower(n) if k == n else None,
        ma_upper=ma_upper(n) if k == n else None,
        k_upper_exact=exact,
        k_upper=root,
        k_upper_coarse=coarse,
        k_lower_simple=khessian_lower_simple(order),
        k_lower_holder=holder,
        bp_lower=g1,
        bp_upper=g2,
    )
