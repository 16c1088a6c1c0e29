import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from khessian.gap import (
    GapRecord, cone_distance, cubic_gap_constant, distance_to_cone, envelope_integrand,
    envelope_max_closed_form, gap_cubic, gap_trend,
)
from khessian.quadrature import quad_weighted
from khessian.radial import HessianOrder as H, RadialGrid, cone_profile, profile_from_function
from khessian.solver import SolverConfig, solve


def _cardano_root():
    # depressed cubic y^3 - 12y - 10 with x = y + 1; three real roots,
    # trigonometric form, pick the one in (0, 1)
    roots = [1 + 4 * math.cos((math.acos(10 / 16) + 2 * math.pi * j) / 3) for j in range(3)]
    (root,) = [x for x in roots if 0 < x < 1]
    return root


def test_cubic_root_value():
    a = cubic_gap_constant(1e-6)
    assert a == pytest.approx(0.1074, abs=1e-3)
    assert abs(gap_cubic(a)) < 1e-5


def test_cubic_root_matches_trigonometric_solution():
    assert cubic_gap_constant() == pytest.approx(_cardano_root(), abs=1e-10)


def test_cubic_sign_bracket():
    assert gap_cubic(0.0) == 1 and gap_cubic(1.0) == -10
    assert gap_cubic(0.1) > 0 and gap_cubic(0.11) < 0


def test_cubic_rejects_bad_tol():
    with pytest.raises(ValueError):
        cubic_gap_constant(0.0)


def test_root_is_envelope_threshold():
    assert envelope_max_closed_form(cubic_gap_constant(1e-6)) == pytest.approx(0.25, abs=1e-6)
    assert envelope_max_closed_form(cubic_gap_constant()) == pytest.approx(0.25, abs=1e-10)


def test_envelope_endpoints():
    assert envelope_max_closed_form(0.0) == pytest.approx(5 / 24, abs=1e-15)
    assert envelope_max_closed_form(1.0) == pytest.approx(2 / 3, abs=1e-15)
    for bad in (-0.1, 1.5):
        with pytest.raises(ValueError):
            envelope_max_closed_form(bad)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 1.0))
def test_envelope_closed_form_matches_quadrature(alpha):
    kink = 0.5 * (1 + alpha)
    val = quad_weighted(envelope_integrand(alpha), 1e-13, breakpoints=[kink])
    assert val == pytest.approx(envelope_max_closed_form(alpha), abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_envelope_increasing(a, b):
    lo, hi = sorted((a, b))
    assert envelope_max_closed_form(lo) <= envelope_max_closed_form(hi)


def test_cone_has_zero_distance():
    d, _ = distance_to_cone(cone_profile(RadialGrid.uniform(256)))
    assert d == 0.0


def test_synthetic_bump_distance():
    c = 0.2
    g = RadialGrid.uniform(256)
    p = profile_from_function(g, lambda r: -(1 - r) * (1 + c * r),
                              lambda r: 1 - c + 2 * c * r)
    d, r = distance_to_cone(p)
    assert d == pytest.approx(c / 4, abs=1e-14)
    assert r == 0.5


def test_cone_distance_of_solution(table):
    rec = cone_distance(table[(20, 20)])
    assert isinstance(rec, GapRecord)
    assert 0 < rec.distance <= 1 and 0 <= rec.attained_radius <= 1
    assert rec.alpha0 == pytest.approx(0.1074, abs=1e-3)


def test_cone_distance_rejects_bad_input(table):
    with pytest.raises(ValueError):
        cone_distance(table[(2, 3)])
    with pytest.raises(ValueError):
        cone_distance(solve(H(3, 3), SolverConfig(max_iters=1)))


def test_gap_trend_single():
    (rec,) = gap_trend([2])
    assert rec.n == 2 and rec.converged and rec.distance > 0


def test_gap_trend_shape():
    recs = gap_trend([10, 20, 40], jobs=2)
    assert [r.n for r in recs] == [10, 20, 40]
    assert all(r.converged and 0 <= r.distance <= 1 for r in recs)
    assert len({r.alpha0 for r in recs}) == 1


def test_gap_trend_empty():
    assert gap_trend([]) == []


def test_gap_trend_flags_unconverged():
    (rec,) = gap_trend([4], SolverConfig(max_iters=1))
    assert not rec.converged


def test_distances_nonnegative(table):
    for n in range(2, 26):
        rec = cone_distance(table[(n, n)])
        assert rec.distance >= 0.0
        np.testing.assert_array_less(-1e-12, np.abs(table[(n, n)].profile.values)
                                     - 1 + table[(n, n)].profile.r)
