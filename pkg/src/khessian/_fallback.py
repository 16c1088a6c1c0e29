"""Pure numpy implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is not available.  Signatures
and results must match the extension exactly (up to float rounding).
"""
import numpy as np


def sigma_k(lams, k):
    lams = np.asarray(lams, dtype=float)
    e = np.zeros(k + 1)
    e[0] = 1.0
    for x in lams:
        # descending j so e[j-1] is still the previous value
        e[1:] = e[1:] + x * e[:-1]
    return float(e[k])


def weighted_cumsum(g, wa, wb):
    """Cumulative integral from 0 given product-integration panel weights."""
    out = np.empty(g.shape[0])
    out[0] = 0.0
    np.cumsum(wa * g[:-1] + wb * g[1:], out=out[1:])
    return out


def fixed_point_step(values, wa, wb, rpow, h, k, c):
    """One unnormalized sweep of the radial fixed-point map.

    Returns ``(phi, utilde)`` where ``phi`` is the slope of the new iterate
    (with unit eigenvalue) and ``utilde(r) = -int_r^1 phi``.
    """
    g = np.abs(values) ** k
    cum = weighted_cumsum(g, wa, wb)
    q = rpow * cum
    q[0] = 0.0
    np.maximum(q, 0.0, out=q)
    phi = c * q ** (1.0 / k)
    seg = 0.5 * h * (phi[:-1] + phi[1:])
    utilde = np.empty_like(phi)
    utilde[-1] = 0.0
    utilde[:-1] = -np.cumsum(seg[::-1])[::-1]
    return phi, utilde
