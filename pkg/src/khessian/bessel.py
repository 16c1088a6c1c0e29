"""First zero of J_nu by power series and bisection (the k = 1 oracle).

Deliberately independent of the radial solver: the series is summed in
extended precision with mpmath so that large orders lose no accuracy to
cancellation.
"""
from mpmath import mp, mpf

_MAX_TERMS = 20000


def _reduced_series(nu, x):
    """``Gamma(nu+1) J_nu(x) / (x/2)^nu``; same sign as ``J_nu(x)`` for x > 0."""
    y = -(x * x) / 4
    term = mpf(1)
    total = term
    tiny = mpf(10) ** (-mp.dps + 5)
    for m in range(1, _MAX_TERMS):
        term *= y / (m * (nu + m))
        total += term
        if m > x and abs(term) < tiny * max(abs(total), tiny):
            return total
    raise RuntimeError(f"Bessel series did not converge at x={x}")


def first_bessel_zero(nu, tol=1e-15, dps=60):
    """First positive zero of ``J_nu`` for ``nu >= 0``."""
    if nu < 0:
        raise ValueError("order must be nonnegative")
    with mp.workdps(dps):
        nu = mpf(nu)
        step = mpf("0.25")
        lo = nu + step if nu > 0 else step
        # J_nu > 0 below its first zero, which exceeds nu
        hi = lo + step
        while _reduced_series(nu, hi) > 0:
            lo, hi = hi, hi + step
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if _reduced_series(nu, mid) > 0:
                lo = mid
            else:
                hi = mid
        return float((lo + hi) / 2)


def laplace_reference(n):
    """First Dirichlet eigenvalue of the unit ball in R^n: ``j_{n/2-1}^2``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    j = first_bessel_zero((n - 2) / 2)
    return j * j
