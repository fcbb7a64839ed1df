"""Delaunay profile layer: classification, extrema, coordinates, and the
Kenmotsu (n=3) parametrization."""

import math

import numpy as np
import pytest

from rotcheeger.delaunay import (
    CurvePoint,
    DelaunayClass,
    DelaunayParams,
    KenmotsuParams,
    StepControl,
    classify,
    cos_sigma,
    delaunay_params,
    first_integral_residual,
    half_period,
    integrate_profile,
    kenmotsu_params,
    kenmotsu_point,
    kenmotsu_tangent,
    profile_extrema,
    t_max,
    x_of_y,
)
from rotcheeger.errors import InvalidParamsError


# ---------------------------------------------------------------------------
# Admissible range of the first integral
# ---------------------------------------------------------------------------


def test_t_max_closed_values():
    assert abs(t_max(3, 1.0) - 0.25) < 1e-15
    assert abs(t_max(4, 1.0) - 4.0 / 27.0) < 1e-15
    assert abs(t_max(5, 1.0) - 27.0 / 256.0) < 1e-15
    # scales like H^{-(n-2)}
    assert abs(t_max(3, 2.0) - 0.125) < 1e-15
    assert abs(t_max(5, 2.0) - 27.0 / 2048.0) < 1e-15


def test_params_validation():
    with pytest.raises(InvalidParamsError):
        DelaunayParams(2, 1.0, 0.0)
    with pytest.raises(InvalidParamsError):
        DelaunayParams(3, -1.0, 0.0)
    with pytest.raises(InvalidParamsError):
        DelaunayParams(3, 1.0, 0.3)  # above t_max = 1/4
    with pytest.raises(InvalidParamsError):
        DelaunayParams(3, math.nan, 0.0)
    DelaunayParams(3, 1.0, 0.25)  # the cylinder value itself is admissible


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "n,H,T,expected",
    [
        (3, 1.0, 0.25, DelaunayClass.CYLINDER),
        (3, 1.0, 0.1, DelaunayClass.UNDULOID),
        (3, 1.0, 0.0, DelaunayClass.SPHERE),
        (3, 1.0, -0.3, DelaunayClass.NODOID),
        (3, 0.0, 0.5, DelaunayClass.CATENOID),
        (3, 0.0, 0.0, DelaunayClass.HYPERPLANE),
        (10, 0.8, 0.0, DelaunayClass.SPHERE),
        (10, 0.8, -1.0, DelaunayClass.NODOID),
    ],
)
def test_classify_table(n, H, T, expected):
    assert classify(DelaunayParams(n, H, T)) is expected


def test_classify_near_cylinder_snaps_within_tol():
    tm = t_max(3, 1.0)
    assert classify(DelaunayParams(3, 1.0, tm * (1.0 - 1e-14))) is DelaunayClass.CYLINDER
    assert classify(DelaunayParams(3, 1.0, tm * (1.0 - 1e-6))) is DelaunayClass.UNDULOID


# ---------------------------------------------------------------------------
# Extrema of the ordinate
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("H,T", [(1.0, 0.1), (1.3, 0.15), (0.6, 0.4)])
def test_unduloid_extrema_match_quadratic_n3(H, T):
    # n = 3: y^2 H - y + T = 0 at horizontal tangency
    disc = math.sqrt(1.0 - 4.0 * H * T)
    y_lo, y_hi = profile_extrema(DelaunayParams(3, H, T))
    assert abs(y_lo - (1.0 - disc) / (2.0 * H)) < 1e-12
    assert abs(y_hi - (1.0 + disc) / (2.0 * H)) < 1e-12


@pytest.mark.parametrize("H,T", [(1.0, -0.3), (2.0, -0.05), (0.7, -1.4)])
def test_nodoid_extrema_match_quadratic_n3(H, T):
    # inner neck solves y + H y^2 + T = 0, outer bulge solves y - H y^2 = T
    y_lo, y_hi = profile_extrema(DelaunayParams(3, H, T))
    assert abs(y_lo - (-1.0 + math.sqrt(1.0 - 4.0 * H * T)) / (2.0 * H)) < 1e-12
    assert abs(y_hi - (1.0 + math.sqrt(1.0 - 4.0 * H * T)) / (2.0 * H)) < 1e-12


@pytest.mark.parametrize(
    "n,H,T_frac", [(4, 1.1, 0.3), (5, 0.9, 0.7), (10, 1.4, -0.5), (30, 1.02, 0.2)]
)
def test_extrema_satisfy_first_integral_general_n(n, H, T_frac):
    T = T_frac * t_max(n, H)
    y_lo, y_hi = profile_extrema(DelaunayParams(n, H, T))
    assert 0.0 < y_lo < y_hi
    for y in (y_lo, y_hi):
        sgn = 1.0 if y == y_hi or T > 0 else 1.0
        # at an extremum cos(sigma) = +-1, so |T| = |y^{n-2} -+ H y^{n-1}|
        res = min(
            abs(y ** (n - 2) - H * y ** (n - 1) - T),
            abs(y ** (n - 2) + H * y ** (n - 1) + T),
        )
        assert res < 1e-10 * max(1.0, abs(T))


def test_sphere_and_cylinder_extrema():
    assert profile_extrema(DelaunayParams(3, 2.0, 0.0)) == (0.0, 0.5)
    y_lo, y_hi = profile_extrema(DelaunayParams(4, 1.0, t_max(4, 1.0)))
    y_star = 2.0 / 3.0  # (n-2)/((n-1)H)
    assert abs(y_lo - y_star) < 1e-12 and abs(y_hi - y_star) < 1e-12


def test_catenoid_extrema():
    y_lo, y_hi = profile_extrema(DelaunayParams(3, 0.0, 0.7))
    assert abs(y_lo - 0.7) < 1e-12  # |T|^{1/(n-2)}
    assert math.isinf(y_hi)


# ---------------------------------------------------------------------------
# Coordinates along the profile
# ---------------------------------------------------------------------------


def test_cos_sigma_limits_and_interior():
    # unduloids are graphs over the axis: cos(sigma) = +1 at both extrema
    p = DelaunayParams(3, 1.2, 0.1)
    y_lo, y_hi = profile_extrema(p)
    assert abs(cos_sigma(p, y_hi) - 1.0) < 1e-9
    assert abs(cos_sigma(p, y_lo) - 1.0) < 1e-9
    y = 0.5 * (y_lo + y_hi)
    assert abs(cos_sigma(p, y) - (0.1 + 1.2 * y * y) / y) < 1e-13
    # the nodoid doubles back at its neck: cos(sigma) = -1 there
    q = DelaunayParams(3, 1.2, -0.2)
    z_lo, z_hi = profile_extrema(q)
    assert abs(cos_sigma(q, z_lo) + 1.0) < 1e-9
    assert abs(cos_sigma(q, z_hi) - 1.0) < 1e-9


def test_x_of_y_sphere_oracle():
    # unit sphere (H=1, T=0) starting at the pole-side point (0, 1):
    # descending branch to y = 1/2 lands at x = -sqrt(3)/2
    p = DelaunayParams(3, 1.0, 0.0)
    x = x_of_y(p, 1.0, 0.0, -1, 0.5)
    assert abs(x + math.sqrt(3.0) / 2.0) < 1e-12
    # mirrored branch
    x2 = x_of_y(p, 1.0, 0.0, +1, 0.5)
    assert abs(x2 - math.sqrt(3.0) / 2.0) < 1e-12


def test_x_of_y_rejects_out_of_range_ordinate():
    p = DelaunayParams(3, 1.2, 0.1)
    y_lo, _ = profile_extrema(p)
    with pytest.raises(InvalidParamsError):
        x_of_y(p, y_lo, 0.0, 1, 0.5 * y_lo)


def test_half_period_closed_form_n3():
    for H, B in [(0.8, 0.35), (1.6, 0.9)]:
        T = (1.0 - B * B) / (4.0 * H)
        assert abs(half_period(DelaunayParams(3, H, T)) - math.pi / (2.0 * H)) < 1e-11


def test_half_period_rejects_degenerate_classes():
    with pytest.raises(InvalidParamsError):
        half_period(DelaunayParams(3, 1.0, 0.25))  # cylinder
    with pytest.raises(InvalidParamsError):
        half_period(DelaunayParams(3, 1.0, 0.0))  # sphere


# ---------------------------------------------------------------------------
# ODE integration entry point
# ---------------------------------------------------------------------------


def test_integrate_profile_validates_start_point():
    p = DelaunayParams(3, 1.0, 0.1)
    y_lo, y_hi = profile_extrema(p)
    good = CurvePoint(0.0, 0.0, y_hi, 0.0)
    res = integrate_profile(p, good, 0.5)
    assert res.s[-1] == pytest.approx(0.5)
    bad = CurvePoint(0.0, 0.0, y_hi, 0.4)  # tangent inconsistent with T
    with pytest.raises(InvalidParamsError):
        integrate_profile(p, bad, 0.5)


def test_integrate_profile_first_integral_drift():
    p = DelaunayParams(3, 1.2, 0.1)
    _, y_hi = profile_extrema(p)
    res = integrate_profile(p, CurvePoint(0.0, 0.0, y_hi, 0.0), 3.0)
    worst = max(abs(first_integral_residual(p, q)) for q in res.points)
    assert worst < 1e-8


def test_integrate_profile_sphere_hits_axis():
    p = DelaunayParams(3, 1.0, 0.0)
    res = integrate_profile(p, CurvePoint(0.0, 0.0, 1.0, 0.0), 3.0)
    assert res.hit_axis
    assert res.end.y == 0.0
    assert abs(res.end.x - 1.0) < 1e-8


def test_step_control_is_honoured():
    p = DelaunayParams(3, 1.0, 0.1)
    _, y_hi = profile_extrema(p)
    loose = integrate_profile(
        p, CurvePoint(0.0, 0.0, y_hi, 0.0), 2.0, StepControl(rtol=1e-5, atol=1e-7)
    )
    tight = integrate_profile(
        p, CurvePoint(0.0, 0.0, y_hi, 0.0), 2.0, StepControl(rtol=1e-12, atol=1e-13)
    )
    assert len(tight.s) > len(loose.s)


# ---------------------------------------------------------------------------
# Kenmotsu parametrization (n = 3)
# ---------------------------------------------------------------------------


def test_kenmotsu_cylinder_point():
    kp = KenmotsuParams(1.0, 0.0)
    x, y = kenmotsu_point(kp, 0.7)
    assert (x, y) == pytest.approx((0.7, 0.5))


def test_kenmotsu_sphere_is_unit_circle():
    kp = KenmotsuParams(1.0, 1.0)
    for s in (0.0, 0.4, 1.0, 1.4):
        x, y = kenmotsu_point(kp, s)
        assert abs(x - math.sin(s)) < 1e-13
        assert abs(y - math.cos(s)) < 1e-13


def test_kenmotsu_extrema_and_period():
    H, B = 1.3, 0.45
    kp = KenmotsuParams(H, B)
    _, y0 = kenmotsu_point(kp, 0.0)
    _, y1 = kenmotsu_point(kp, math.pi / (2.0 * H))
    assert abs(y0 - (1.0 + B) / (2.0 * H)) < 1e-13  # max at s = 0 for B > 0
    assert abs(y1 - (1.0 - B) / (2.0 * H)) < 1e-13
    _, y2 = kenmotsu_point(kp, math.pi / H)  # full period
    assert abs(y2 - y0) < 1e-13


def test_kenmotsu_signed_min_convention():
    H, B = 1.3, -0.45
    kp = KenmotsuParams(H, B)
    _, y0 = kenmotsu_point(kp, 0.0)
    assert abs(y0 - (1.0 - 0.45) / (2.0 * H)) < 1e-13  # min at s = 0 for B < 0


def test_kenmotsu_tangent_matches_first_integral():
    H, B = 1.1, 0.6
    kp = KenmotsuParams(H, B)
    p = delaunay_params(kp)
    for s in (0.3, 0.9, 1.7):
        x, y = kenmotsu_point(kp, s)
        sg = kenmotsu_tangent(kp, s)
        res = first_integral_residual(p, CurvePoint(s, x, y, sg))
        assert abs(res) < 1e-13


def test_kenmotsu_roundtrip_n3():
    p = DelaunayParams(3, 1.4, 0.12)
    kp = kenmotsu_params(p)
    assert kp.B >= 0.0
    back = delaunay_params(kp)
    assert back.T == pytest.approx(p.T, abs=1e-15)
    kp_min = kenmotsu_params(p, signed_min=True)
    assert kp_min.B == pytest.approx(-kp.B)
    assert delaunay_params(kp_min).T == pytest.approx(p.T, abs=1e-15)


def test_kenmotsu_params_classification_consistency():
    # |B| < 1 unduloid, |B| = 1 sphere, |B| > 1 nodoid
    for B, cls in [(0.5, DelaunayClass.UNDULOID), (1.0, DelaunayClass.SPHERE), (1.7, DelaunayClass.NODOID)]:
        p = delaunay_params(KenmotsuParams(1.0, B))
        assert classify(p) is cls


def test_kenmotsu_requires_n3():
    with pytest.raises(InvalidParamsError):
        kenmotsu_params(DelaunayParams(4, 1.0, 0.1))
