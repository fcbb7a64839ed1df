"""Rotationally invariant constant-mean-curvature generating curves.

A generating curve in the upper half plane, parametrized by arc length,
satisfies

    x' = cos(sigma),   y' = sin(sigma),
    sigma' = -(n-1) H + (n-2) cos(sigma) / y,

where H is the (constant, suitably normalized) mean curvature of the revolved
hypersurface in R^n and sigma is the tangent angle.  The quantity

    T = y^{n-2} cos(sigma) - H y^{n-1}

is conserved along solutions and classifies the curve: cylinder at the
maximal value, unduloids for 0 < T < t_max, sphere at T = 0, nodoids for
T < 0, and for H = 0 catenoid-type curves (T != 0) or a hyperplane (T = 0).

For n = 3 and H > 0 the curves also admit the closed-form parametrization

    y(s) = w(s) / (2H),  w(s) = sqrt(1 + B^2 + 2 B cos(2 H s)),
    x(s) = c + int_0^s (1 + B cos(2 H t)) / w(t) dt,

with a shape parameter B; s = 0 sits at a profile extremum (maximum for
B > 0, minimum for B < 0) and T = (1 - B^2) / (4 H).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .errors import InvalidParamsError, SingularityError

__all__ = [
    "DelaunayClass",
    "DelaunayParams",
    "KenmotsuParams",
    "CurvePoint",
    "ProfileResult",
    "StepControl",
    "t_max",
    "classify",
    "profile_extrema",
    "cos_sigma",
    "half_period",
    "integrate_profile",
    "x_of_y",
    "first_integral_residual",
    "kenmotsu_point",
    "kenmotsu_tangent",
    "kenmotsu_params",
    "delaunay_params",
]


class DelaunayClass(enum.Enum):
    CYLINDER = "cylinder"
    UNDULOID = "unduloid"
    SPHERE = "sphere"
    NODOID = "nodoid"
    CATENOID = "catenoid"
    HYPERPLANE = "hyperplane"


@dataclass(frozen=True)
class DelaunayParams:
    """Dimension, mean curvature and first-integral constant of a profile."""

    n: int
    H: float
    T: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 3:
            raise InvalidParamsError(f"dimension n must be an integer >= 3, got {self.n!r}")
        if not math.isfinite(self.H) or self.H < 0.0:
            raise InvalidParamsError(f"mean curvature H must be finite and >= 0, got {self.H!r}")
        if not math.isfinite(self.T):
            raise InvalidParamsError(f"first integral T must be finite, got {self.T!r}")
        if self.H > 0.0:
            tm = t_max(self.n, self.H)
            if self.T > tm * (1.0 + 1e-12) + 1e-300:
                raise InvalidParamsError(
                    f"T={self.T!r} exceeds t_max={tm!r}: no real profile for n={self.n}, H={self.H!r}"
                )


@dataclass(frozen=True)
class KenmotsuParams:
    """Closed-form profile parameters for n = 3: curvature H, shape B, shift c.

    B > 0 places a profile maximum at s = 0, B < 0 a minimum (a half-period
    shift of the |B| curve); |B| < 1 unduloids, B = 0 cylinder, |B| = 1
    sphere, |B| > 1 nodoids.
    """

    H: float
    B: float
    c: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.H) or self.H <= 0.0:
            raise InvalidParamsError(f"Kenmotsu H must be finite and > 0, got {self.H!r}")
        if not math.isfinite(self.B) or self.B <= -1.0:
            raise InvalidParamsError(
                f"Kenmotsu shape B must be finite and > -1 (signed convention), got {self.B!r}"
            )


@dataclass(frozen=True)
class CurvePoint:
    """Sample of a generating curve: arc length, position, tangent angle."""

    s: float
    x: float
    y: float
    sigma: float


@dataclass(frozen=True)
class StepControl:
    """Adaptive step-control settings for profile integration."""

    rtol: float = 1e-10
    atol: float = 1e-12
    axis_eps: float = 1e-10
    max_steps: int = 200000


@dataclass(frozen=True)
class ProfileResult:
    """Integrated profile samples (one per accepted step)."""

    params: DelaunayParams
    s: np.ndarray
    x: np.ndarray
    y: np.ndarray
    sigma: np.ndarray
    hit_axis: bool

    @property
    def points(self) -> list[CurvePoint]:
        return [
            CurvePoint(float(si), float(xi), float(yi), float(gi))
            for si, xi, yi, gi in zip(self.s, self.x, self.y, self.sigma)
        ]

    @property
    def end(self) -> CurvePoint:
        return CurvePoint(
            float(self.s[-1]), float(self.x[-1]), float(self.y[-1]), float(self.sigma[-1])
        )


def t_max(n: int, H: float) -> float:
    """Largest first-integral value admitting a real profile (the cylinder)."""
    if H <= 0.0:
        raise InvalidParamsError("t_max requires H > 0")
    if n < 3:
        raise InvalidParamsError("t_max requires n >= 3")
    return ((n - 2) / H) ** (n - 2) / (n - 1) ** (n - 1)


def classify(params: DelaunayParams, tol: float = 1e-12) -> DelaunayClass:
    """Classify the profile; ``tol`` is relative to the natural T scale."""
    n, H, T = params.n, params.H, params.T
    if H == 0.0:
        scale = max(abs(T), 1.0)
        if abs(T) <= tol * scale:
            return DelaunayClass.HYPERPLANE
        return DelaunayClass.CATENOID
    tm = t_max(n, H)
    if abs(T - tm) <= tol * tm:
        return DelaunayClass.CYLINDER
    if abs(T) <= tol * tm:
        return DelaunayClass.SPHERE
    if T > 0.0:
        return DelaunayClass.UNDULOID
    return DelaunayClass.NODOID


def _f_upper(n: int, H: float, y: float) -> float:
    # y^{n-2} - H y^{n-1}; equals T at extrema with cos(sigma) = +1
    return y ** (n - 2) - H * y ** (n - 1)


def profile_extrema(params: DelaunayParams, tol: float = 1e-12) -> tuple[float, float]:
    """Ordinate range (y_min, y_max) of the profile.

    Unbounded classes report ``math.inf`` as y_max; the sphere touches the
    axis, so its range is (0, 1/H).
    """
    n, H, T = params.n, params.H, params.T
    cls = classify(params, tol)
    if cls is DelaunayClass.CYLINDER:
        yc = (n - 2) / ((n - 1) * H)
        return (yc, yc)
    if cls is DelaunayClass.SPHERE:
        return (0.0, 1.0 / H)
    if cls is DelaunayClass.HYPERPLANE:
        return (0.0, math.inf)
    if cls is DelaunayClass.CATENOID:
        return (abs(T) ** (1.0 / (n - 2)), math.inf)
    if cls is DelaunayClass.UNDULOID:
        ystar = (n - 2) / ((n - 1) * H)
        y_min = brentq(lambda y: _f_upper(n, H, y) - T, 0.0, ystar, xtol=1e-15, rtol=8.9e-16)
        y_max = brentq(lambda y: _f_upper(n, H, y) - T, ystar, 1.0 / H, xtol=1e-15, rtol=8.9e-16)
        return (float(y_min), float(y_max))
    # nodoid: min where cos(sigma) = -1, max on the outer branch of f = T
    b_min = (-T / H) ** (1.0 / (n - 1))
    y_min = brentq(
        lambda y: y ** (n - 2) + H * y ** (n - 1) + T, 0.0, b_min, xtol=1e-15, rtol=8.9e-16
    )
    hi = max(1.0 / H, b_min)
    width = max(hi, 1.0 / H)
    while _f_upper(n, H, hi) > T:
        hi += width
    y_max = brentq(lambda y: _f_upper(n, H, y) - T, 1.0 / H, hi, xtol=1e-15, rtol=8.9e-16)
    return (float(y_min), float(y_max))


def cos_sigma(params: DelaunayParams, y: float) -> float:
    """cos(sigma) as a function of the ordinate along the profile."""
    if y <= 0.0:
        raise InvalidParamsError("cos_sigma requires y > 0")
    c = (params.T + params.H * y ** (params.n - 1)) / y ** (params.n - 2)
    if abs(c) > 1.0 + 1e-9:
        raise InvalidParamsError(
            f"ordinate y={y!r} is not on the profile (|cos sigma| = {abs(c):.6g} > 1)"
        )
    return max(-1.0, min(1.0, c))


def half_period(params: DelaunayParams, tol: float = 1e-12) -> float:
    """Arc length between consecutive profile extrema (unduloid/nodoid)."""
    cls = classify(params)
    if cls not in (DelaunayClass.UNDULOID, DelaunayClass.NODOID):
        raise InvalidParamsError(f"half_period undefined for {cls.value}")
    y_min, y_max = profile_extrema(params)
    return _kernels.graph_arclen(params.n, params.H, params.T, y_min, y_max, tol)


def integrate_profile(
    params: DelaunayParams,
    start: CurvePoint,
    span: float,
    ctrl: StepControl = StepControl(),
) -> ProfileResult:
    """Integrate the arc-length ODE from ``start`` over ``span``.

    The start point must lie on the profile: its implied first integral has
    to match params.T.  If the trajectory meets the axis the result is
    truncated there (endpoint extrapolated onto y = 0) with hit_axis set.
    """
    if start.y <= 0.0:
        raise InvalidParamsError("profile integration must start at y > 0")
    implied = start.y ** (params.n - 2) * math.cos(start.sigma) - params.H * start.y ** (
        params.n - 1
    )
    scale = max(abs(params.T), t_max(params.n, params.H) if params.H > 0 else 1.0, 1e-30)
    if abs(implied - params.T) > 1e-8 * scale:
        raise InvalidParamsError(
            f"start point off the profile: implied T={implied!r} vs params T={params.T!r}"
        )
    s, x, y, sigma, hit_axis = _kernels.profile_ode(
        params.n,
        params.H,
        start.x,
        start.y,
        start.sigma,
        span,
        ctrl.rtol,
        ctrl.atol,
        ctrl.axis_eps,
        ctrl.max_steps,
    )
    return ProfileResult(params, s, x, y, sigma, hit_axis)


def x_of_y(
    params: DelaunayParams,
    y0: float,
    x0: float,
    branch: int,
    y: float,
    tol: float = 1e-12,
) -> float:
    """Abscissa of the profile as a graph over the ordinate.

    Integrates dx/dy = (T + H t^{n-1}) / sqrt(t^{2(n-2)} - (T + H t^{n-1})^2)
    from y0 to y along a single monotone-ordinate branch and returns
    x0 + branch * |displacement|; ``branch`` (+1/-1) selects the direction of
    x-travel.  Endpoints may sit exactly at profile extrema (the
    inverse-square-root singularity there is integrable and handled exactly).
    """
    if branch not in (-1, 1):
        raise InvalidParamsError("branch must be +1 or -1")
    cls = classify(params)
    if cls is DelaunayClass.CYLINDER:
        raise InvalidParamsError("cylinder profile is not a graph over the ordinate")
    if cls is DelaunayClass.HYPERPLANE:
        return x0
    y_min, y_max = profile_extrema(params)
    eps = 1e-12 * max(1.0, y_max if math.isfinite(y_max) else 1.0)
    for val, name in ((y0, "y0"), (y, "y")):
        if val < y_min - eps or val > y_max + eps:
            raise InvalidParamsError(
                f"{name}={val!r} outside profile ordinate range [{y_min!r}, {y_max!r}]"
            )
    lo = max(min(y0, y), y_min)
    hi = min(max(y0, y), y_max if math.isfinite(y_max) else max(y0, y))
    disp = _kernels.graph_x(params.n, params.H, params.T, lo, hi, tol)
    return x0 + branch * abs(disp)


def first_integral_residual(params: DelaunayParams, point: CurvePoint) -> float:
    """Signed residual y^{n-2} cos(sigma) - H y^{n-1} - T at a sample point."""
    n, H, T = params.n, params.H, params.T
    return point.y ** (n - 2) * math.cos(point.sigma) - H * point.y ** (n - 1) - T


# ---------------------------------------------------------------------------
# Kenmotsu closed form (n = 3)
# ---------------------------------------------------------------------------

def _w(kp: KenmotsuParams, s: float) -> float:
    # cancellation-free split of 1 + B^2 + 2B cos(2Hs); see _kernels._ref._knum_w
    if kp.B >= 0.0:
        base, q = 1.0 - kp.B, kp.B * math.cos(kp.H * s) ** 2
    else:
        base, q = 1.0 + kp.B, -kp.B * math.sin(kp.H * s) ** 2
    return math.sqrt(base * base + 4.0 * q)


def kenmotsu_point(kp: KenmotsuParams, s: float, tol: float = 1e-12) -> tuple[float, float]:
    """Point (x, y) at arc length s; raises where the profile meets the axis."""
    w = _w(kp, s)
    if w <= 1e-12 * (1.0 + abs(kp.B)):
        raise SingularityError(
            f"profile touches the axis at s={s!r} (w = 0, |B| = 1): tangent undefined"
        )
    x = kp.c + _kernels.kenmotsu_x(kp.H, kp.B, 0.0, s, tol)
    y = w / (2.0 * kp.H)
    return (x, y)


def kenmotsu_tangent(kp: KenmotsuParams, s: float) -> float:
    """Tangent angle sigma at arc length s (atan2 branch)."""
    w = _w(kp, s)
    if w <= 1e-12 * (1.0 + abs(kp.B)):
        raise SingularityError(f"tangent undefined at axis contact (s={s!r})")
    if kp.B >= 0.0:
        num = (1.0 - kp.B) + 2.0 * kp.B * math.cos(kp.H * s) ** 2
    else:
        num = (1.0 + kp.B) - 2.0 * kp.B * math.sin(kp.H * s) ** 2
    coss = num / w
    sins = -kp.B * math.sin(2.0 * kp.H * s) / w
    return math.atan2(sins, coss)


def kenmotsu_params(params: DelaunayParams, signed_min: bool = False) -> KenmotsuParams:
    """Kenmotsu parameters (c = 0) matching a DelaunayParams with n = 3.

    With ``signed_min`` the negative-B representative is returned (profile
    minimum at s = 0 instead of maximum); only meaningful for unduloids.
    """
    if params.n != 3:
        raise InvalidParamsError("Kenmotsu parametrization requires n = 3")
    if params.H <= 0.0:
        raise InvalidParamsError("Kenmotsu parametrization requires H > 0")
    disc = 1.0 - 4.0 * params.H * params.T
    if disc < 0.0:
        raise InvalidParamsError("no real Kenmotsu shape: T exceeds t_max")
    B = math.sqrt(disc)
    if signed_min:
        if B >= 1.0:
            raise InvalidParamsError("minimum-at-origin representative exists only for |B| < 1")
        B = -B
    return KenmotsuParams(params.H, B, 0.0)


def delaunay_params(kp: KenmotsuParams) -> DelaunayParams:
    """First-integral parameters of a Kenmotsu profile: T = (1 - B^2)/(4H)."""
    return DelaunayParams(3, kp.H, (1.0 - kp.B * kp.B) / (4.0 * kp.H))
