"""Radial calculus for k-Hessian operators on the unit ball.

A radial function ``w(x) = u(|x|)`` has Hessian eigenvalues ``u''`` (once,
radial direction) and ``u'/r`` (``n - 1`` times, tangential).  Everything in
this package works on 1-D profiles ``u`` sampled on ``[0, 1]``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Callable, Optional

import numpy as np

from . import kernels
from .quadrature import quad_weighted

DEFAULT_GRID_SIZE = 4096


class ProfileValidationError(ValueError):
    """A profile violates one or more of the radial profile invariants."""

    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__("invalid profile: " + "; ".join(self.failures))


class DegenerateProfileError(ValueError):
    pass


@dataclass(frozen=True)
class HessianOrder:
    k: int
    n: int

    def __post_init__(self):
        if int(self.k) != self.k or int(self.n) != self.n:
            raise ValueError("k and n must be integers")
        if self.n < 2:
            raise ValueError(f"dimension n={self.n} must be at least 2")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")

    @property
    def ratio(self):
        return self.n / self.k


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RadialGrid:
    nodes: np.ndarray

    def __post_init__(self):
        r = _frozen(self.nodes)
        object.__setattr__(self, "nodes", r)
        if r.ndim != 1 or r.size < 17:
            raise ValueError("grid needs at least 16 intervals")
        if r[0] != 0.0 or r[-1] != 1.0:
            raise ValueError("grid must start at r=0 and end at r=1")
        if np.any(np.diff(r) <= 0):
            raise ValueError("grid nodes must be strictly increasing")

    @classmethod
    def uniform(cls, intervals=DEFAULT_GRID_SIZE):
        r = np.linspace(0.0, 1.0, intervals + 1)
        r[-1] = 1.0
        return cls(r)

    @property
    def intervals(self):
        return self.nodes.size - 1

    @cached_property
    def spacing(self):
        return _frozen(np.diff(self.nodes))


@dataclass(frozen=True, eq=False)
class RadialProfile:
    """Sampled radial profile ``u`` with slopes ``u'``.

    ``curvatures`` (``u''``) may be supplied when known exactly; otherwise it
    is obtained by centered differences of the slopes.  ``func``/``deriv``
    are optional exact callables used by quadrature instead of interpolation.
    """

    grid: RadialGrid
    values: np.ndarray
    slopes: np.ndarray
    curvatures: Optional[np.ndarray] = None
    func: Optional[Callable] = field(default=None, repr=False)
    deriv: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        m = self.grid.nodes.size
        for name in ("values", "slopes", "curvatures"):
            arr = getattr(self, name)
            if arr is None:
                continue
            arr = _frozen(arr)
            if arr.shape != (m,):
                raise ValueError(f"{name} must have one entry per grid node")
            object.__setattr__(self, name, arr)

    @property
    def r(self):
        return self.grid.nodes

    @cached_property
    def second(self):
        """``u''`` at every node."""
        if self.curvatures is not None:
            return self.curvatures
        return _frozen(_derivative(self.slopes, self.r))

    @cached_property
    def tangential(self):
        """``u'/r`` at every node, with the ``r -> 0`` limit ``u''(0)``."""
        t = np.empty_like(self.slopes)
        t[1:] = self.slopes[1:] / self.r[1:]
        t[0] = self.second[0]
        return _frozen(t)

    def violations(self):
        out = []
        if np.any(self.values > 0):
            out.append("values must be <= 0")
        if self.values[-1] != 0.0:
            out.append("value at r=1 must be 0")
        if np.any(self.slopes < 0):
            out.append("slopes must be >= 0")
        if self.slopes[0] != 0.0:
            out.append("slope at r=0 must be 0")
        return out

    def validated(self):
        bad = self.violations()
        if bad:
            raise ProfileValidationError(bad)
        return self

    def interpolant(self):
        """Return ``(u, u')`` callables: exact if known, else cubic Hermite."""
        if self.func is not None and self.deriv is not None:
            return self.func, self.deriv
        r, y, s = self.r, self.values, self.slopes
        h = np.diff(r)

        def locate(x):
            x = np.asarray(x, dtype=float)
            i = np.clip(np.searchsorted(r, x, side="right") - 1, 0, h.size - 1)
            t = (x - r[i]) / h[i]
            return i, t

        def u(x):
            i, t = locate(x)
            t2, t3 = t * t, t * t * t
            return ((2 * t3 - 3 * t2 + 1) * y[i] + (t3 - 2 * t2 + t) * h[i] * s[i]
                    + (-2 * t3 + 3 * t2) * y[i + 1] + (t3 - t2) * h[i] * s[i + 1])

        def du(x):
            i, t = locate(x)
            t2 = t * t
            return ((6 * t2 - 6 * t) * (y[i] - y[i + 1]) / h[i]
                    + (3 * t2 - 4 * t + 1) * s[i] + (3 * t2 - 2 * t) * s[i + 1])

        return u, du


def _derivative(s, r):
    """Fourth-order centered differences inside, second-order at the ends.

    S_k near the boundary is a small difference of large terms, so the
    second-order stencil alone leaves an O(1e-1) pointwise defect at n ~ 20.
    """
    d = np.gradient(s, r, edge_order=2)
    h = np.diff(r)
    if s.size > 4 and np.allclose(h, h[0], rtol=1e-12, atol=0.0):
        d[2:-2] = (-s[4:] + 8 * s[3:-1] - 8 * s[1:-3] + s[:-4]) / (12 * h[0])
    return d


def profile_from_function(grid, u, du, d2u=None):
    r = grid.nodes
    curv = None if d2u is None else d2u(r)
    return RadialProfile(grid, u(r), du(r), curv, func=u, deriv=du)


def quadratic_profile(grid=None):
    """``u(r) = (r^2 - 1)/2``: identity Hessian, admissible for every k."""
    grid = grid or RadialGrid.uniform()
    return profile_from_function(
        grid, lambda r: 0.5 * (r * r - 1.0), lambda r: np.asarray(r, float) * 1.0,
        lambda r: np.ones_like(r))


def cone_profile(grid=None):
    """``u(r) = r - 1``; slope 1 at the vertex, so not a valid eigen-profile."""
    grid = grid or RadialGrid.uniform()
    return profile_from_function(
        grid, lambda r: np.asarray(r, float) - 1.0, lambda r: np.ones_like(r),
        lambda r: np.zeros_like(r))


def smoothed_cone(epsilon, grid=None):
    """Sample ``u(r) = sqrt(r^2 + eps) - sqrt(1 + eps)`` with exact slopes."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    grid = grid or RadialGrid.uniform()
    top = np.sqrt(1.0 + epsilon)

    def u(r):
        # cancellation-free near r = 1
        return (r * r - 1.0) / (np.sqrt(r * r + epsilon) + top)

    def du(r):
        return r / np.sqrt(r * r + epsilon)

    def d2u(r):
        return epsilon / (r * r + epsilon) ** 1.5

    return profile_from_function(grid, u, du, d2u)


def load_profile(path):
    """Read a CSV ``r,u[,u_prime]`` profile (with header) and validate it."""
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh) if row and not row[0].startswith("#")]
    if len(rows) < 2:
        raise ProfileValidationError(["profile file has no data rows"])
    width = len(rows[0])
    if width not in (2, 3):
        raise ProfileValidationError(["profile needs 2 or 3 columns: r,u[,u_prime]"])
    try:
        data = np.array([[float(x) for x in row] for row in rows[1:]])
    except ValueError as exc:
        raise ProfileValidationError([f"non-numeric entry ({exc})"]) from None
    if data.shape[1] != width:
        raise ProfileValidationError(["ragged rows"])
    try:
        grid = RadialGrid(data[:, 0])
    except ValueError as exc:
        raise ProfileValidationError([str(exc)]) from None
    values = data[:, 1]
    if width == 3:
        slopes = data[:, 2]
    else:
        slopes = np.gradient(values, grid.nodes, edge_order=2)
        slopes[0] = 0.0
    return RadialProfile(grid, values, slopes).validated()


def radial_hessian_spectrum(p, i, n):
    """``(u'', u'/r, n - 1)`` at node ``i``; the vertex uses ``(u''(0), u''(0))``."""
    if n is None:
        raise ValueError("dimension n is required")
    m = p.r.size
    if not 0 <= i < m:
        raise IndexError(f"node index {i} outside 0..{m - 1}")
    return float(p.second[i]), float(p.tangential[i]), n - 1


def sigma_k(lams, k):
    """k-th elementary symmetric polynomial of ``lams``."""
    lams = np.asarray(lams, dtype=float)
    if not 1 <= k <= lams.size:
        raise ValueError(f"k={k} out of range for {lams.size} values")
    return kernels.sigma_k(lams, int(k))


def _sigma_radial(rad, tan, j, n):
    # sigma_j of {rad, tan x (n-1)} without expanding the multiset
    return comb(n - 1, j) * tan**j + comb(n - 1, j - 1) * rad * tan ** (j - 1)


def sk_radial_all(p, order):
    """``S_k(D^2 w)`` at every node of the profile."""
    return _sigma_radial(p.second, p.tangential, order.k, order.n)


def sk_radial(p, order, i):
    if not 0 <= i < p.r.size:
        raise IndexError(f"node index {i} outside 0..{p.r.size - 1}")
    return float(sk_radial_all(p, order)[i])


def is_k_admissible(p, order):
    """True iff sigma_j > 0 for j = 1..k at every node with r < 1."""
    rad, tan = p.second[:-1], p.tangential[:-1]
    for j in range(1, order.k + 1):
        if not np.all(_sigma_radial(rad, tan, j, order.n) > 0):
            return False
    return True


def rayleigh_quotient(p, order, tol=1e-11):
    """Hessian Rayleigh quotient of a radial profile via the 1-D reduction.

    numerator   k^-1 C(n-1, k-1) int_0^1 r^(n-k) |u'|^(k+1) dr
    denominator int_0^1 r^(n-1) |u|^(k+1) dr
    """
    k, n = order.k, order.n
    u, du = p.interpolant()
    breaks = None if p.func is not None else p.r
    den = quad_weighted(lambda r: r ** (n - 1) * np.abs(u(r)) ** (k + 1), tol,
                        breakpoints=breaks)
    if not den > 1e-300:
        raise DegenerateProfileError("profile is (numerically) zero")
    num = quad_weighted(lambda r: r ** (n - k) * np.abs(du(r)) ** (k + 1), tol,
                        breakpoints=breaks)
    return comb(n - 1, k - 1) * num / (k * den)


def rayleigh_cone_limit(order, epsilon=1e-8, steps=4, tol=1e-12):
    """Cone limit (eps -> 0) of the smoothed-cone quotient.

    The quotient approaches its limit like ``sqrt(eps)``, so the values at
    ``eps, eps/100, ...`` are Richardson-extrapolated in that variable.
    """
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    grid = RadialGrid.uniform(16)
    table = [rayleigh_quotient(smoothed_cone(epsilon * 100.0**-j, grid), order, tol)
             for j in range(steps)]
    for level in range(1, steps):
        fac = 10.0**level
        table = [(fac * b - a) / (fac - 1) for a, b in zip(table, table[1:])]
    return table[0]
