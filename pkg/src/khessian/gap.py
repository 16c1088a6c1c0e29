"""Sup-norm distance between Monge-Ampere eigenfunctions and the cone |x| - 1.

The distance is compared against the gap constant alpha0, the root in (0, 1)
of ``x^3 - 3x^2 - 9x + 1``.  At finite n only the distances themselves are
reported; nothing is asserted about their limit.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .radial import HessianOrder
from .solver import SolverConfig, sweep


def gap_cubic(x):
    return x**3 - 3 * x**2 - 9 * x + 1


def cubic_gap_constant(tol=1e-10):
    """Bisection for the root of the gap cubic in (0, 1); f(0) = 1, f(1) = -10."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if gap_cubic(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def envelope_max_closed_form(alpha):
    """``int_0^1 max_{0<=s<=t} s(1 + alpha - s) dt = (1+alpha)^2 (5-alpha)/24``."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    return (1 + alpha) ** 2 * (5 - alpha) / 24


def envelope_integrand(alpha):
    """Vectorized ``t -> max_{0<=s<=t} s(1 + alpha - s)``."""
    peak = 0.5 * (1 + alpha)

    def f(t):
        t = np.asarray(t, dtype=float)
        return np.where(t <= peak, t * (1 + alpha - t), peak * peak)

    return f


@dataclass(frozen=True)
class GapRecord:
    n: int
    distance: float
    attained_radius: float
    alpha0: float
    converged: bool = True


def distance_to_cone(profile):
    """``(max_r (|u(r)| - 1 + r), argmax r)`` for a profile normalized to -1 at 0."""
    gap = np.abs(profile.values) - 1.0 + profile.r
    i = int(np.argmax(gap))
    return float(gap[i]), float(profile.r[i])


def cone_distance(res, alpha0=None):
    if not res.converged or res.profile is None:
        raise ValueError(f"result for {res.order} did not converge")
    if res.order.k != res.order.n:
        raise ValueError("the cone distance is defined for the Monge-Ampere case k = n")
    d, r = distance_to_cone(res.profile)
    return GapRecord(res.order.n, d, r, cubic_gap_constant() if alpha0 is None else alpha0)


def gap_trend(ns, cfg=None, jobs=1):
    """Solve (n, n) for each n and tabulate the cone distances."""
    ns = list(ns)
    alpha0 = cubic_gap_constant()
    results = sweep([HessianOrder(n, n) for n in ns], cfg or SolverConfig(), jobs)
    out = []
    for n, res in zip(ns, results):
        if res.profile is None:
            out.append(GapRecord(n, float("nan"), float("nan"), alpha0, False))
            continue
        d, r = distance_to_cone(res.profile)
        out.append(GapRecord(n, d, r, alpha0, res.converged))
    return out
