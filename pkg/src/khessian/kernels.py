"""Kernel backend selection: the compiled extension if built, else numpy."""
from . import _fallback

try:
    from . import _kernels as _impl
    BACKEND = "cython"
except ImportError:  # extension not built
    _impl = _fallback
    BACKEND = "python"

sigma_k = _impl.sigma_k
weighted_cumsum = _impl.weighted_cumsum
fixed_point_step = _impl.fixed_point_step

__all__ = ["BACKEND", "sigma_k", "weighted_cumsum", "fixed_point_step"]
