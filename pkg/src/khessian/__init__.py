"""k-Hessian eigenvalues of the unit ball.

Radial fixed-point solver for the principal eigenpair, exact-rational
evaluation of the closed-form eigenvalue bounds, and the cone-distance gap
analysis for the Monge-Ampere case.
"""
__version__ = "0.1.0"

from .bounds import (  # noqa: E402
    BoundsReport, ball_volume, beta_integral_exact, binomial_exact, bounds_report,
    bp_bounds, khessian_lower_holder, khessian_lower_simple, khessian_upper,
    ma_lower, ma_lower_exact, ma_upper, ma_upper_exact, sandwich_check,
    stirling_limit_table, volume_extremal_check,
)
from .gap import (  # noqa: E402
    GapRecord, cone_distance, cubic_gap_constant, envelope_max_closed_form, gap_trend,
)
from .quadrature import QuadratureError, quad_weighted  # noqa: E402
from .radial import (  # noqa: E402
    HessianOrder, RadialGrid, RadialProfile, is_k_admissible, radial_hessian_spectrum,
    rayleigh_quotient, sigma_k, sk_radial, smoothed_cone,
)
from .solver import (  # noqa: E402
    EigenResult, SolverConfig, identity_residual, iterate_step, laplace_reference,
    ode_residual, solve, sweep,
)
