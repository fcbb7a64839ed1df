"""Quadrature / ODE kernel tests: rule exactness, singular endpoints,
closed-form oracles, and cross-backend agreement."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

from rotcheeger._kernels import _gk, _ref, backend
from rotcheeger.errors import QuadratureError, StepFailureError

try:
    from rotcheeger._kernels import _fast
except ImportError:  # pragma: no cover - build-environment dependent
    _fast = None

BACKENDS = [pytest.param(_ref, id="pure")]
if _fast is not None:
    BACKENDS.append(pytest.param(_fast, id="compiled"))

needs_fast = pytest.mark.skipif(_fast is None, reason="compiled backend not built")


# ---------------------------------------------------------------------------
# Gauss-Kronrod panel
# ---------------------------------------------------------------------------


def test_gk21_weights_integrate_constants():
    assert abs(_gk.WEIGHTS_K.sum() - 2.0) < 1e-14
    assert abs(_gk.WEIGHTS_G.sum() - 2.0) < 1e-14
    assert len(_gk.NODES) == 21
    assert np.all(np.diff(_gk.NODES) > 0)


@pytest.mark.parametrize("k", [0, 1, 2, 5, 10, 19, 25, 31])
def test_gk21_polynomial_exactness(k):
    # the 21-point Kronrod rule is exact through degree 31
    val, _ = _gk.gk21(lambda x: x**k, 0.0, 1.0)
    assert abs(val - 1.0 / (k + 1)) < 5e-15


def test_gk21_error_estimate_tracks_truth():
    val, err = _gk.gk21(np.sin, 0.0, math.pi)
    assert abs(val - 2.0) < 1e-13
    assert err < 1e-10


def test_adaptive_smooth_integrals():
    assert abs(_gk.adaptive(np.exp, 0.0, 1.0, 1e-12) - (math.e - 1.0)) < 1e-12
    # a sharply peaked gaussian forces real subdivision
    val = _gk.adaptive(lambda x: np.exp(-((50.0 * x) ** 2)), -1.0, 1.0, 1e-12)
    truth = math.sqrt(math.pi) / 50.0 * math.erf(50.0)
    assert abs(val - truth) < 1e-12


def test_adaptive_zero_width_interval():
    assert _gk.adaptive(np.exp, 0.3, 0.3, 1e-12) == 0.0


def test_adaptive_reversed_interval_is_signed():
    a = _gk.adaptive(np.exp, 0.0, 1.0, 1e-12)
    b = _gk.adaptive(np.exp, 1.0, 0.0, 1e-12)
    assert abs(a + b) < 1e-12


def test_adaptive_raises_on_nonintegrable_singularity():
    with np.errstate(divide="ignore"):
        with pytest.raises(QuadratureError):
            _gk.adaptive(lambda x: 1.0 / np.abs(x - 0.5), 0.0, 1.0, 1e-10)


# ---------------------------------------------------------------------------
# Kenmotsu kernels (closed-form oracles, n = 3)
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("impl", BACKENDS)
def test_kenmotsu_cylinder_is_identity(impl):
    # B = 0: w = 1, every integrand collapses to 1
    for f in (impl.kenmotsu_x, impl.kenmotsu_arc, impl.kenmotsu_vol):
        assert abs(f(1.7, 0.0, -0.3, 1.1) - 1.4) < 1e-13


@pytest.mark.parametrize("impl", BACKENDS)
def test_kenmotsu_sphere_closed_forms(impl):
    # B = 1, H = 1: w = 2 cos s on (-pi/2, pi/2); the curve is the unit circle
    s = 1.2
    assert abs(impl.kenmotsu_x(1.0, 1.0, 0.0, s) - math.sin(s)) < 1e-12
    assert abs(impl.kenmotsu_arc(1.0, 1.0, 0.0, s) - 2.0 * math.sin(s)) < 1e-12
    vol_truth = 4.0 * (math.sin(s) - math.sin(s) ** 3 / 3.0)
    assert abs(impl.kenmotsu_vol(1.0, 1.0, 0.0, s) - vol_truth) < 1e-12


@pytest.mark.parametrize("impl", BACKENDS)
def test_kenmotsu_x_many_matches_scalar(impl):
    # away from the near-axis band |B| ~ 1 the fixed rule is fully accurate
    rng = np.random.default_rng(7)
    B = rng.uniform(-0.9, 3.0, size=40)
    B = np.where(np.abs(np.abs(B) - 1.0) < 0.15, B + 0.3, B)
    s0 = rng.uniform(-1.0, 1.0, size=40)
    s1 = s0 + rng.uniform(0.05, 1.2, size=40)
    batch = impl.kenmotsu_x_many(1.45, B, s0, s1)
    for i in range(40):
        scalar = impl.kenmotsu_x(1.45, float(B[i]), float(s0[i]), float(s1[i]))
        assert abs(batch[i] - scalar) < 1e-10 * max(1.0, abs(scalar))


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("B", [1.001, 1.0001, 1.000001, 0.999, 0.99999])
def test_kenmotsu_adaptive_survives_near_sphere_neck(impl, B):
    # |B| near 1 with a span crossing the w-minimum: the stable split of w
    # plus the panel noise floor must keep the adaptive driver convergent
    H = 1.45
    s_star = math.pi / (2.0 * H)
    a, b = s_star - 0.5, s_star + 0.4
    val = impl.kenmotsu_x(H, B, a, b)
    assert math.isfinite(val)
    if abs(B - 1.0) >= 5e-4:
        # feature width ~|B-1|/H is resolved by a uniform fine fixed rule
        edges = np.linspace(a, b, 4097)
        fine = sum(
            float(impl.kenmotsu_x_many(H, np.array([B]), np.array([lo]), np.array([hi]))[0])
            for lo, hi in zip(edges[:-1], edges[1:])
        )
        assert abs(val - fine) < 1e-9
    else:
        # compare against the exact B = 1 value, integral of |cos Ht|;
        # the integrand difference is O(|B-1| log 1/|B-1|)
        exact_sphere = (2.0 - math.sin(H * a) - math.sin(H * b)) / H
        eps = abs(B - 1.0)
        assert abs(val - exact_sphere) < 3.0 * eps * math.log(1.0 / eps)


@pytest.mark.parametrize("impl", BACKENDS)
def test_kenmotsu_x_many_scan_grade_near_axis(impl):
    # spans crossing the w-minimum with |B| near 1 are only scan-grade; the
    # scan drivers re-verify bracketed roots with the adaptive kernel
    H = 1.45
    s_star = math.pi / (2.0 * H)
    B = np.array([1.02, 1.05, 0.97])
    s0 = np.full(3, s_star - 0.5)
    s1 = np.full(3, s_star + 0.4)
    batch = impl.kenmotsu_x_many(H, B, s0, s1)
    for i in range(3):
        scalar = impl.kenmotsu_x(H, float(B[i]), float(s0[i]), float(s1[i]))
        assert abs(batch[i] - scalar) < 2e-3


# ---------------------------------------------------------------------------
# Graph-form kernels (hemisphere + Kenmotsu consistency)
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("impl", BACKENDS)
def test_graph_kernels_unit_hemisphere(impl):
    # n = 3, H = 1, T = 0: the branch from y=0 to y=1 is a quarter circle
    assert abs(impl.graph_x(3, 1.0, 0.0, 0.0, 1.0) - 1.0) < 1e-12
    assert abs(impl.graph_arclen(3, 1.0, 0.0, 0.0, 1.0) - math.pi / 2.0) < 1e-12
    assert abs(impl.graph_area(3, 1.0, 0.0, 0.0, 1.0) - 1.0) < 1e-12
    assert abs(impl.graph_vol(3, 1.0, 0.0, 0.0, 1.0) - 2.0 / 3.0) < 1e-12


@pytest.mark.parametrize("impl", BACKENDS)
def test_graph_kernels_signed_by_orientation(impl):
    args = (3, 1.2, 0.1, 0.3, 0.6)
    for f in (impl.graph_x, impl.graph_arclen, impl.graph_area, impl.graph_vol):
        fwd = f(*args)
        rev = f(3, 1.2, 0.1, 0.6, 0.3)
        assert abs(fwd + rev) < 1e-13
    assert impl.graph_arclen(*args) > 0.0


@pytest.mark.parametrize("impl", BACKENDS)
@pytest.mark.parametrize("B", [0.25, 0.6, 0.9, 1.8])
def test_graph_matches_kenmotsu_over_half_period(impl, B):
    # same functionals computed in the s-variable (max -> min half period) and
    # the y-variable (ascending branch); equal by the mirror symmetry of the
    # profile about vertical lines through its extrema
    H = 1.3
    T = (1.0 - B * B) / (4.0 * H)
    y_lo = abs(1.0 - B) / (2.0 * H)
    y_hi = (1.0 + B) / (2.0 * H)
    s_hi = math.pi / (2.0 * H)
    x_k = impl.kenmotsu_x(H, B, 0.0, s_hi)
    arc_k = s_hi
    area_k = impl.kenmotsu_arc(H, B, 0.0, s_hi) / (2.0 * H)
    vol_k = impl.kenmotsu_vol(H, B, 0.0, s_hi) / (4.0 * H * H)
    assert abs(impl.graph_x(3, H, T, y_lo, y_hi) - x_k) < 1e-11
    assert abs(impl.graph_arclen(3, H, T, y_lo, y_hi) - arc_k) < 1e-11
    assert abs(impl.graph_area(3, H, T, y_lo, y_hi) - area_k) < 1e-11
    assert abs(impl.graph_vol(3, H, T, y_lo, y_hi) - vol_k) < 1e-11


@pytest.mark.parametrize("impl", BACKENDS)
def test_graph_half_period_closed_form_n3(impl):
    # for n = 3 the arc length between consecutive extrema is pi/(2H)
    for H, B in [(0.7, 0.3), (1.0, 0.8), (2.2, 1.5)]:
        T = (1.0 - B * B) / (4.0 * H)
        y_lo = abs(1.0 - B) / (2.0 * H)
        y_hi = (1.0 + B) / (2.0 * H)
        arc = impl.graph_arclen(3, H, T, y_lo, y_hi)
        assert abs(arc - math.pi / (2.0 * H)) < 1e-11


@pytest.mark.parametrize("impl", BACKENDS)
def test_graph_kernels_high_dimension_finite(impl):
    # n = 30 endpoint data from the cylinder-glue construction
    n, H = 30, 1.02474
    T = 1.0 - H
    y1 = (1.0 - 1.0 / H) ** (1.0 / (n - 1))
    x2 = impl.graph_x(n, H, T, y1, 1.0)
    s1 = impl.graph_area(n, H, T, y1, 1.0)
    v1 = impl.graph_vol(n, H, T, y1, 1.0)
    assert 0.0 < x2 < 0.5
    assert s1 > 0.0 and v1 > 0.0
    # frozen regression values (verified against the profile ODE)
    assert abs(x2 - 0.28125049512221245) < 1e-9
    assert abs(s1 - 0.16850042958686368) < 1e-9
    assert abs(v1 - 0.1599629598609908) < 1e-9


# ---------------------------------------------------------------------------
# Profile ODE
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("impl", BACKENDS)
def test_profile_ode_unit_circle(impl):
    # sphere profile: start at the top of the unit circle, run to the axis
    s, x, y, sg, hit = impl.profile_ode(3, 1.0, 0.0, 1.0, 0.0, 2.0)
    assert hit
    r_err = np.max(np.abs(np.hypot(x, y) - 1.0))
    assert r_err < 1e-8
    assert abs(x[-1] - 1.0) < 1e-8
    assert y[-1] == 0.0
    assert abs(sg[-1] + math.pi / 2.0) < 1e-8
    assert abs(s[-1] - math.pi / 2.0) < 1e-6


@pytest.mark.parametrize("impl", BACKENDS)
def test_profile_ode_negative_span_mirrors(impl):
    _, xf, yf, _, _ = impl.profile_ode(3, 1.0, 0.0, 1.0, 0.0, 1.0)
    _, xb, yb, _, _ = impl.profile_ode(3, 1.0, 0.0, 1.0, 0.0, -1.0)
    assert abs(xf[-1] + xb[-1]) < 1e-9
    assert abs(yf[-1] - yb[-1]) < 1e-9


@pytest.mark.parametrize("impl", BACKENDS)
def test_profile_ode_unduloid_half_period(impl):
    H, B = 1.2, 0.4
    y_hi = (1.0 + B) / (2.0 * H)
    y_lo = (1.0 - B) / (2.0 * H)
    span = math.pi / (2.0 * H)
    _, _, y, sg, hit = impl.profile_ode(3, H, 0.0, y_hi, 0.0, span)
    assert not hit
    assert abs(y[-1] - y_lo) < 1e-8
    assert abs(math.sin(sg[-1])) < 1e-7  # horizontal tangent again


@pytest.mark.parametrize("impl", BACKENDS)
def test_profile_ode_rejects_bad_start(impl):
    with pytest.raises(StepFailureError):
        impl.profile_ode(3, 1.0, 0.0, 0.0, 0.0, 1.0)


@pytest.mark.parametrize("impl", BACKENDS)
def test_profile_ode_step_budget(impl):
    with pytest.raises(StepFailureError):
        impl.profile_ode(3, 1.0, 0.0, 1.0, 0.0, 1.0, max_steps=2)


@pytest.mark.parametrize("impl", BACKENDS)
def test_profile_ode_zero_span(impl):
    s, x, y, sg, hit = impl.profile_ode(3, 1.0, 0.5, 0.8, 0.1, 0.0)
    assert len(s) == 1 and not hit
    assert (x[0], y[0], sg[0]) == (0.5, 0.8, 0.1)


# ---------------------------------------------------------------------------
# Backend selection and agreement
# ---------------------------------------------------------------------------


def test_active_backend_reports_a_known_name():
    assert backend() in ("pure", "compiled")


def test_env_var_forces_pure_backend():
    env = dict(os.environ, CHEEGER_BACKEND="pure")
    out = subprocess.run(
        [sys.executable, "-c", "import rotcheeger; print(rotcheeger.backend())"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "pure"


@needs_fast
def test_env_var_forces_compiled_backend():
    env = dict(os.environ, CHEEGER_BACKEND="compiled")
    out = subprocess.run(
        [sys.executable, "-c", "import rotcheeger; print(rotcheeger.backend())"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "compiled"


@needs_fast
def test_backends_agree_on_random_kernel_battery():
    rng = np.random.default_rng(42)
    for _ in range(60):
        H = float(rng.uniform(0.3, 3.0))
        B = float(rng.choice([rng.uniform(-0.95, 0.95), rng.uniform(1.05, 4.0)]))
        s0 = float(rng.uniform(-2.0, 2.0))
        s1 = s0 + float(rng.uniform(0.01, 2.0)) / H
        for f in ("kenmotsu_x", "kenmotsu_arc", "kenmotsu_vol"):
            a = getattr(_ref, f)(H, B, s0, s1)
            b = getattr(_fast, f)(H, B, s0, s1)
            assert abs(a - b) < 1e-11 * max(1.0, abs(a))
    for n in (3, 4, 5, 10, 30):
        for _ in range(8):
            H = float(rng.uniform(0.5, 2.5))
            tm = (n - 2.0) ** (n - 2) / ((n - 1.0) ** (n - 1) * H ** (n - 2))
            T = float(rng.uniform(0.05, 0.95)) * tm * float(rng.choice([1.0, -1.0]))
            from rotcheeger.delaunay import DelaunayParams, profile_extrema

            y0, y1 = profile_extrema(DelaunayParams(n, H, T))
            for f in ("graph_x", "graph_arclen", "graph_area", "graph_vol"):
                a = getattr(_ref, f)(n, H, T, y0, y1)
                b = getattr(_fast, f)(n, H, T, y0, y1)
                assert abs(a - b) < 1e-11 * max(1.0, abs(a))


@needs_fast
def test_backends_agree_on_ode_paths():
    rng = np.random.default_rng(3)
    for _ in range(20):
        n = int(rng.choice([3, 4, 5, 10, 30]))
        H = float(rng.uniform(0.5, 2.5))
        y0 = float(rng.uniform(0.2, 1.2))
        sg0 = float(rng.uniform(-1.2, 1.2))
        span = float(rng.uniform(-1.5, 1.5))
        ra = _ref.profile_ode(n, H, 0.0, y0, sg0, span)
        rb = _fast.profile_ode(n, H, 0.0, y0, sg0, span)
        assert ra[4] == rb[4]
        for i in (1, 2, 3):
            assert abs(float(ra[i][-1]) - float(rb[i][-1])) < 1e-9
