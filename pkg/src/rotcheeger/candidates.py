"""Admissible Cheeger-set candidates for the supported domain families.

A candidate at mean curvature H is a subset of the domain whose free
boundary (the part away from the domain walls) revolves pieces of
constant-mean-curvature profiles with mean curvature exactly H, glued C^1
to wall segments and to each other.  For each family the gluing conditions
reduce to root-finding in one shape parameter; this module solves them,
assembles the generating curve, and records the named area/volume terms
whose totals give the perimeter-to-volume ratio.

Solvers work in the arc-length parametrization of the n = 3 profiles,

    y(s) = w(s) / (2H),    w = sqrt(1 + B^2 + 2 B cos 2Hs),
    x(s) = c + integral_0^s (1 + B cos 2Ht) / w(t) dt,

where B > -1 is the shape parameter: B >= 0 places an ordinate maximum at
s = 0 and B < 0 a minimum; |B| < 1 is an unduloid, |B| = 1 a sphere,
|B| > 1 a nodoid; the first integral of the profile equation is
T = (1 - B^2) / (4H).  The profile slope

    dy/dx = -B sin 2Hs / (1 + B cos 2Hs)

matched to a line gives a quadratic in tan(Hs); the root forms used below
are rationalized so they stay stable near B = 1.  Tangency to a line of
slope -m (m > 0) at s > 0 happens first at

    tan(Hs) = m (1 + B) / (B + sqrt(B^2 - m^2 (1 - B^2))),

which covers both the unduloid branch (first contact, on the concave side
of the bulge, so the profile stays below the line) and the nodoid branch
(unique contact).  Tangency to a rising line (slope +m) for a neck profile
(B = -beta < 0) at the descending-slope contact happens at

    tan(Hs) = (beta + sqrt(beta^2 - m^2 (1 - beta^2))) / (m (1 + beta)),

the second of the two contacts, where the profile osculates the line from
below.  Nodoids reach a vertical tangent at cos 2Hs = -1/B.

The cylinder family is implemented for every dimension n >= 3 through the
graph-form kernels; the cone, double-cone, and hourglass constructions are
three-dimensional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .delaunay import (
    DelaunayClass,
    KenmotsuParams,
    classify,
    delaunay_params,
)
from .domains import DomainSpec, build_domain, profile_height
from .errors import InadmissibleError, InvalidParamsError, NumericsError
from .revolve import (
    DelaunayArc,
    Piece,
    PiecewiseCurve,
    Segment,
    SphereArc,
    curve_area_volume,
    piece_area,
    piece_end,
    piece_volume,
    reflect_piece,
    sample_piece,
    unit_ball_volume,
)

__all__ = [
    "RatioBreakdown",
    "CandidateSet",
    "cylinder_candidate",
    "cylinder_sphere_infeasibility",
    "double_cone_candidate",
    "cone_candidate",
    "hourglass_candidates",
    "candidate_ratio",
]


# ---------------------------------------------------------------------------
# Result types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatioBreakdown:
    """Named area and volume terms of a candidate, with their totals.

    The keys are structure specific (wall runs, caps, free profile pieces,
    face disks); ``perimeter`` and ``volume`` are the exact sums of the
    parts, so the ratio can be read off as ``perimeter / volume``.
    """

    areas: Mapping[str, float]
    volumes: Mapping[str, float]
    perimeter: float
    volume: float

    @property
    def ratio(self) -> float:
        return self.perimeter / self.volume


def _breakdown(areas: Mapping[str, float], volumes: Mapping[str, float]) -> RatioBreakdown:
    return RatioBreakdown(
        areas=dict(areas),
        volumes=dict(volumes),
        perimeter=math.fsum(areas.values()),
        volume=math.fsum(volumes.values()),
    )


@dataclass(frozen=True)
class CandidateSet:
    """A candidate set: the domain, the free-boundary mean curvature, and
    the assembled generating curve with its bookkeeping.

    ``glue`` holds the solved gluing parameters (shape parameter, contact
    arc-lengths, touch points) as a flat name -> value map.  ``free_pieces``
    indexes the generatrix pieces on the free boundary (the rest lie on the
    domain walls).  ``components`` counts the revolved connected components
    the breakdown describes: a two-component candidate stores one component
    as the generatrix and doubles the terms, which leaves the ratio
    unchanged.
    """

    domain: DomainSpec
    H: float
    structure: str
    glue: Mapping[str, float]
    generatrix: PiecewiseCurve
    free_pieces: tuple[int, ...]
    breakdown: RatioBreakdown
    components: int = 1


# ---------------------------------------------------------------------------
# Shared profile helpers (arc-length form, n = 3)
# ---------------------------------------------------------------------------

# The classifier rounds B^2 <= 1e-12 to a straight cylinder profile; spans
# that close to straight are assembled as their chord.
_NEAR_CYLINDER = 1.000001e-6

# Bracketing-scan resolution in the shape parameter.
_SCAN_RES = 1e-3
_SCAN_CAP = 200_001


def _require_curvature(H: float) -> None:
    if not (isinstance(H, (int, float, np.floating)) and math.isfinite(H) and H > 0.0):
        raise InvalidParamsError(f"mean curvature must be finite and positive, got {H!r}")


def _y_of(H: float, B, s):
    """Profile ordinate w(s) / (2H); cancellation-free for B near +-1.

    Works elementwise on arrays and on scalars alike.
    """
    B = np.asarray(B, dtype=float)
    s = np.asarray(s, dtype=float)
    w2 = np.where(
        B >= 0.0,
        (1.0 - B) ** 2 + 4.0 * B * np.cos(H * s) ** 2,
        (1.0 + B) ** 2 - 4.0 * B * np.sin(H * s) ** 2,
    )
    out = np.sqrt(np.maximum(w2, 0.0)) / (2.0 * H)
    return float(out) if out.ndim == 0 else out


def _s_tangent_down(H: float, m: float, B):
    """First s > 0 where the slope equals -m (descending contact after an
    ordinate maximum); valid for B >= m / sqrt(1 + m^2), including B > 1."""
    B = np.asarray(B, dtype=float)
    disc = np.sqrt(np.maximum(B * B - m * m * (1.0 - B * B), 0.0))
    out = np.arctan(m * (1.0 + B) / (B + disc)) / H
    return float(out) if out.ndim == 0 else out


def _s_tangent_up_second(H: float, m: float, B):
    """Second s > 0 where the slope equals +m for a neck profile B < 0
    (slope decreasing through the contact, so the profile stays below a
    rising tangent line); valid for -B >= m / sqrt(1 + m^2)."""
    beta = -np.asarray(B, dtype=float)
    disc = np.sqrt(np.maximum(beta * beta - m * m * (1.0 - beta * beta), 0.0))
    out = np.arctan((beta + disc) / (m * (1.0 + beta))) / H
    return float(out) if out.ndim == 0 else out


def _s_vertical(H: float, B):
    """First s > 0 with a vertical tangent (nodoids only, B > 1)."""
    B = np.asarray(B, dtype=float)
    out = np.arccos(-1.0 / B) / (2.0 * H)
    return float(out) if out.ndim == 0 else out


def _s_level_from_max(H: float, wD: float, B):
    """First s > 0 where w(s) = wD, descending from the maximum at s = 0
    (B > 0); requires |1 - B| <= wD <= 1 + B."""
    B = np.asarray(B, dtype=float)
    q = (wD * wD - (1.0 - B) ** 2) / (4.0 * B)
    out = np.arccos(np.sqrt(np.clip(q, 0.0, 1.0))) / H
    return float(out) if out.ndim == 0 else out


def _s_level_from_min(H: float, wD: float, B):
    """First s > 0 where w(s) = wD, rising from the minimum at s = 0
    (B < 0); requires 1 + B <= wD <= 1 - B."""
    B = np.asarray(B, dtype=float)
    q = (wD * wD - (1.0 + B) ** 2) / (-4.0 * B)
    out = np.arcsin(np.sqrt(np.clip(q, 0.0, 1.0))) / H
    return float(out) if out.ndim == 0 else out


def _kterms(H: float, B: float, s_a: float, s_b: float, tol: float) -> tuple[float, float]:
    """Lateral area and slab volume of the revolved profile span [s_a, s_b]:
    2 pi * integral y ds and pi * integral y^2 dx (signed with traversal)."""
    area = (math.pi / H) * _kernels.kenmotsu_arc(H, B, s_a, s_b, tol)
    vol = (math.pi / (4.0 * H * H)) * _kernels.kenmotsu_vol(H, B, s_a, s_b, tol)
    return (area, vol)


def _cap_up(R: float, C: float) -> tuple[float, float]:
    """Area and slab volume of a sphere cap traversed from the axis (polar
    angle pi) up to polar angle phi with cos(phi) = C."""
    return (
        2.0 * math.pi * R * R * (1.0 + C),
        (math.pi * R**3 / 3.0) * (2.0 + 3.0 * C - C**3),
    )


def _cap_down(R: float, C: float) -> tuple[float, float]:
    """Area and slab volume of a sphere cap traversed from polar angle phi
    with cos(phi) = C down to the axis (polar angle 0)."""
    return (
        2.0 * math.pi * R * R * (1.0 - C),
        (math.pi * R**3 / 3.0) * (2.0 - 3.0 * C + C**3),
    )


def _frustum_terms(x0: float, y0: float, x1: float, y1: float) -> tuple[float, float]:
    """Lateral area and slab volume of the revolved segment (x0,y0)-(x1,y1)."""
    ell = math.hypot(x1 - x0, y1 - y0)
    area = math.pi * (y0 + y1) * ell
    vol = math.pi * (x1 - x0) * (y0 * y0 + y0 * y1 + y1 * y1) / 3.0
    return (area, vol)


def _kenmotsu_pieces(
    H: float, B: float, s_a: float, s_b: float, x_a: float, tol: float = 1e-12
) -> list[Piece]:
    """Generatrix pieces of the profile on [s_a, s_b], with x(s_a) = x_a.

    The span is split at ordinate extrema (multiples of pi/(2H)) so every
    piece is a monotone-ordinate branch; junction abscissas chain through
    the cached branch endpoints, keeping junction gaps at rounding level.
    Near-straight profiles (|B| small enough that the classifier rounds
    them to a cylinder) collapse to their chord, which deviates from the
    true profile by O(B/H) -- the callers mark the affected junctions as
    corners since the chord slope differs from the true tangent by O(B).
    """
    if not s_b > s_a:
        raise InvalidParamsError("profile span needs s_b > s_a")
    if abs(B) <= _NEAR_CYLINDER:
        dx = _kernels.kenmotsu_x(H, B, s_a, s_b, tol)
        return [Segment(x_a, _y_of(H, B, s_a), x_a + dx, _y_of(H, B, s_b))]
    T = (1.0 - B * B) / (4.0 * H)
    quarter = math.pi / (2.0 * H)
    eps = 1e-9 * quarter
    splits = [s_a]
    k = math.floor(s_a / quarter) + 1
    while k * quarter < s_b - eps:
        if k * quarter > s_a + eps:
            splits.append(k * quarter)
        k += 1
    splits.append(s_b)
    pieces: list[Piece] = []
    x0 = x_a
    for u, v in zip(splits, splits[1:]):
        y0 = _y_of(H, B, u)
        y1 = _y_of(H, B, v)
        g = _kernels.graph_x(3, H, T, y0, y1, tol)
        dx = _kernels.kenmotsu_x(H, B, u, v, tol)
        if dx * g == 0.0:
            # net displacement cancels over the span; orient from a short
            # initial sub-span where cancellation is impossible
            v2 = u + 1e-3 * (v - u)
            g = _kernels.graph_x(3, H, T, y0, _y_of(H, B, v2), tol)
            dx = _kernels.kenmotsu_x(H, B, u, v2, tol)
        arc = DelaunayArc(3, H, T, x0, y0, y1, 1 if dx * g > 0.0 else -1)
        pieces.append(arc)
        x0 = arc.x1
    return pieces


# ---------------------------------------------------------------------------
# Bracketed scans
# ---------------------------------------------------------------------------


def _grid(lo: float, hi: float, res: float = _SCAN_RES) -> np.ndarray:
    count = min(_SCAN_CAP, max(33, int((hi - lo) / res) + 2))
    return np.linspace(lo, hi, count)


def _brackets(xs: np.ndarray, gs: np.ndarray) -> list[tuple[float, float]]:
    out = []
    for i in range(len(xs) - 1):
        g0, g1 = float(gs[i]), float(gs[i + 1])
        if not (math.isfinite(g0) and math.isfinite(g1)):
            continue
        if g0 == 0.0 and g1 == 0.0:
            continue
        if g0 * g1 <= 0.0:
            out.append((float(xs[i]), float(xs[i + 1])))
    return out


def _refine(g, lo: float, hi: float) -> float | None:
    """Bisect a sign change to machine precision; None when the bracket was
    an artifact of the fixed-rule scan (the adaptive evaluation disagrees)."""
    try:
        return float(brentq(g, lo, hi, xtol=1e-13, rtol=8.9e-16, maxiter=200))
    except ValueError:
        return None


def _dedupe(roots: Iterable[float], tol: float = 1e-9) -> list[float]:
    out: list[float] = []
    for r in sorted(roots):
        if not out or r - out[-1] > tol:
            out.append(r)
    return out


# ---------------------------------------------------------------------------
# Cylinder family (general n >= 3)
# ---------------------------------------------------------------------------


def cylinder_candidate(
    n: int,
    l: float,
    r: float,
    H: float,
    *,
    check_containment: bool = True,
    tol: float = 1e-12,
) -> CandidateSet:
    """Symmetric candidate in the solid cylinder of radius r and length l.

    The free profile is tangent to the wall y = r from inside and meets
    each flat face with a vertical tangent; both contacts are fixed by the
    first integral:  T = r^{n-2} - H r^{n-1} from the wall contact
    (cos sigma = 1 at y = r) and T = -H y1^{n-1} from the face contact
    (cos sigma = 0), hence y1 = (r^{n-1} - r^{n-2}/H)^{1/(n-1)}, which is
    real and positive exactly when H > 1/r.  The candidate is a disk of
    radius y1 on each face, the free profile running from the face to the
    wall, and the wall band between the two contact abscissas.
    """
    spec = build_domain("cylinder", n, l=l, r=r)
    _require_curvature(H)
    H = float(H)
    l, r = float(l), float(r)
    T = r ** (n - 2) - H * r ** (n - 1)
    if T >= 0.0:
        raise InadmissibleError(
            f"H = {H:.6g} is at or below 1/r = {1.0 / r:.6g}: the wall-tangent "
            "profile cannot reach a vertical tangent on the face"
        )
    y1 = (r ** (n - 1) - r ** (n - 2) / H) ** (1.0 / (n - 1))
    arc_up = DelaunayArc(n, H, T, 0.0, y1, r, 1)
    x2 = arc_up.x1
    if x2 > 0.5 * l + 1e-12 * max(1.0, l):
        raise InadmissibleError(
            f"free profile spans x in [0, {x2:.6g}], beyond the midplane "
            f"x = {0.5 * l:.6g}: H = {H:.6g} is below the admissible interval"
        )
    pieces: list[Piece] = [Segment(0.0, 0.0, 0.0, y1), arc_up]
    free = [1]
    if l - 2.0 * x2 > 1e-12 * max(1.0, l):
        pieces.append(Segment(x2, r, l - x2, r))
    free.append(len(pieces))
    arc_down = DelaunayArc(n, H, T, l - x2, r, y1, -1)
    pieces.append(arc_down)
    pieces.append(Segment(arc_down.x1, y1, arc_down.x1, 0.0))
    curve = PiecewiseCurve(n, tuple(pieces))
    curve.validate()
    if check_containment:
        _require_contained(spec, curve)

    wn1 = unit_ball_volume(n - 1)
    straight = max(l - 2.0 * x2, 0.0)
    glue = {"T": T, "y1": y1, "x2": x2}
    if n == 3:
        # independent route: quadratures in the arc-length parametrization
        B = 2.0 * H * r - 1.0
        s_v = _s_vertical(H, B)
        s_arc, v_arc = _kterms(H, B, 0.0, s_v, tol)
        glue.update({"B": B, "s_v": s_v})
    else:
        s_arc = piece_area(arc_up, n, tol)
        v_arc = piece_volume(arc_up, n, tol)
    breakdown = _breakdown(
        {
            "S0": 2.0 * wn1 * y1 ** (n - 1),
            "S1": 2.0 * s_arc,
            "S2": (n - 1) * wn1 * r ** (n - 2) * straight,
        },
        {"V1": 2.0 * abs(v_arc), "V2": wn1 * r ** (n - 1) * straight},
    )
    return CandidateSet(
        domain=spec,
        H=H,
        structure="cylinder-nodoid",
        glue=glue,
        generatrix=curve,
        free_pieces=tuple(free),
        breakdown=breakdown,
    )


def cylinder_sphere_infeasibility(n: int, l: float, r: float, samples: int = 257) -> dict:
    """Why spherical caps cannot close the wall-tangent tube: for every cap
    radius rho the capsule (tube of radius rho with two half-ball caps) has
    area-to-volume ratio strictly above the sphere rate (n-1)/rho, by
    exactly omega_n rho^{n-1} / V, so matching the two -- which a
    constant-mean-curvature free boundary would require -- is impossible.

    Returns the two sides and their gap at the largest admissible radius,
    plus the minimum gap over a scan of rho in (0, min(r, l/2)].
    """
    spec = build_domain("cylinder", n, l=l, r=r)  # validates inputs
    del spec
    n = int(n)
    l, r = float(l), float(r)
    wn = unit_ball_volume(n)
    wn1 = unit_ball_volume(n - 1)
    rho_max = min(r, 0.5 * l)
    rhos = np.linspace(rho_max / samples, rho_max, samples)
    straight = l - 2.0 * rhos
    P = n * wn * rhos ** (n - 1) + (n - 1) * wn1 * rhos ** (n - 2) * straight
    V = wn * rhos**n + wn1 * rhos ** (n - 1) * straight
    rates = (n - 1) / rhos
    gaps = P / V - rates
    i = int(np.argmin(gaps))
    return {
        "n": n,
        "l": l,
        "r": r,
        "rho_max": float(rho_max),
        "sphere_rate": float(rates[-1]),
        "capsule_ratio": float(P[-1] / V[-1]),
        "gap": float(gaps[-1]),
        "min_gap": float(gaps[i]),
        "argmin_rho": float(rhos[i]),
        "always_positive": bool(np.all(gaps > 0.0)),
        "samples": int(samples),
    }


# ---------------------------------------------------------------------------
# Double cone (n = 3)
# ---------------------------------------------------------------------------


def _dc_quantities(
    B: float, l: float, r: float, m1: float, m2: float, H: float, tol: float
) -> dict[str, float]:
    s1 = -_s_tangent_down(H, m1, B)
    s2 = _s_tangent_down(H, m2, B)
    X1 = _kernels.kenmotsu_x(H, B, 0.0, s1, tol)
    X2 = _kernels.kenmotsu_x(H, B, 0.0, s2, tol)
    y1 = _y_of(H, B, s1)
    y2 = _y_of(H, B, s2)
    c_left = y1 / m1 - l - X1
    c_right = r - y2 / m2 - X2
    return {
        "B": B,
        "s1": s1,
        "s2": s2,
        "ys1": y1,
        "ys2": y2,
        "c_left": c_left,
        "c_right": c_right,
    }


def _scan_line_line_nodoids(
    l: float, r: float, m1: float, m2: float, H: float, tol: float
) -> list[dict[str, float]]:
    """Shape parameters B > 1 whose profile is tangent to the left wall
    y = m1 (l + x) at s1 < 0 and to the right wall y = m2 (r - x) at
    s2 > 0 with a single axial shift c (the root condition: the shift
    inferred from each contact must agree)."""
    apex = l * m1
    B_lo = 1.0 + 1e-9
    B_hi = 2.0 * H * apex - 1.0
    if not B_hi > B_lo:
        return []
    Bs = _grid(B_lo, B_hi)
    zeros = np.zeros_like(Bs)
    s1 = -_s_tangent_down(H, m1, Bs)
    s2 = _s_tangent_down(H, m2, Bs)
    X1 = _kernels.kenmotsu_x_many(H, Bs, zeros, s1)
    X2 = _kernels.kenmotsu_x_many(H, Bs, zeros, s2)
    G = (_y_of(H, Bs, s1) / m1 - l - X1) - (r - _y_of(H, Bs, s2) / m2 - X2)

    def g(B: float) -> float:
        q = _dc_quantities(B, l, r, m1, m2, H, tol)
        return q["c_left"] - q["c_right"]

    roots = _dedupe(
        root
        for lo, hi in _brackets(Bs, G)
        if (root := _refine(g, lo, hi)) is not None
    )
    out = []
    for B in roots:
        q = _dc_quantities(B, l, r, m1, m2, H, tol)
        c = q["c_left"]
        q.update(
            {
                "c": c,
                "xs1": c + _kernels.kenmotsu_x(H, B, 0.0, q["s1"], tol),
                "xs2": c + _kernels.kenmotsu_x(H, B, 0.0, q["s2"], tol),
                "T": (1.0 - B * B) / (4.0 * H),
            }
        )
        out.append(q)
    return out


def double_cone_candidate(
    l: float,
    r: float,
    theta: float,
    H: float,
    root_index: int = 0,
    *,
    check_containment: bool = True,
    tol: float = 1e-12,
) -> CandidateSet:
    """Candidate in the double cone with apex height l tan(theta): a sphere
    cap of radius 1/H around each axis vertex, wall runs along the two
    slant walls, and a free profile smoothing the apex corner, tangent to
    both walls.  ``root_index`` selects among the gluing solutions at this
    H, ordered by increasing shape parameter."""
    spec = build_domain("double-cone", 3, l=l, r=r, theta=theta)
    _require_curvature(H)
    H = float(H)
    l, r = float(l), float(r)
    m1 = math.tan(theta)
    m2 = l * m1 / r
    sols = _scan_line_line_nodoids(l, r, m1, m2, H, tol)
    if not sols:
        raise InadmissibleError(
            f"no profile of mean curvature H = {H:.6g} joins the two slant "
            "walls tangentially inside this double cone"
        )
    if not 0 <= root_index < len(sols):
        raise InadmissibleError(
            f"root_index {root_index} out of range: {len(sols)} gluing "
            f"solution(s) at H = {H:.6g}"
        )
    sol = sols[root_index]
    R = 1.0 / H
    hyp1 = math.hypot(1.0, m1)
    hyp2 = math.hypot(1.0, m2)
    sin1, cos1 = m1 / hyp1, 1.0 / hyp1
    sin2, cos2 = m2 / hyp2, 1.0 / hyp2
    c1x = -l + R / sin1
    c2x = r - R / sin2
    xh1, yh1 = -l + R * cos1 * cos1 / sin1, R * cos1
    xh2, yh2 = r - R * cos2 * cos2 / sin2, R * cos2
    scale = 1.0 + max(l, r, l * m1)
    tiny = 1e-9 * scale
    if not (xh1 <= sol["xs1"] + tiny and sol["xs1"] <= tiny):
        raise InadmissibleError(
            f"left tangency x = {sol['xs1']:.6g} outside the wall run "
            f"[{xh1:.6g}, 0] at H = {H:.6g}"
        )
    if not (-tiny <= sol["xs2"] and sol["xs2"] <= xh2 + tiny):
        raise InadmissibleError(
            f"right tangency x = {sol['xs2']:.6g} outside the wall run "
            f"[0, {xh2:.6g}] at H = {H:.6g}"
        )

    pieces: list[Piece] = [SphereArc(c1x, R, math.pi, 0.5 * math.pi + theta)]
    free = [0]
    if sol["xs1"] - xh1 > tiny:
        pieces.append(Segment(xh1, yh1, sol["xs1"], sol["ys1"]))
    mid = _kenmotsu_pieces(H, sol["B"], sol["s1"], sol["s2"], sol["xs1"], tol)
    free.extend(range(len(pieces), len(pieces) + len(mid)))
    pieces.extend(mid)
    xe, ye = piece_end(mid[-1])
    if xh2 - xe > tiny:
        pieces.append(Segment(xe, ye, xh2, yh2))
    free.append(len(pieces))
    pieces.append(SphereArc(c2x, R, 0.5 * math.pi - math.atan(m2), 0.0))
    curve = PiecewiseCurve(3, tuple(pieces))
    curve.validate()
    if check_containment:
        _require_contained(spec, curve)

    a1, v1 = _cap_up(R, -sin1)
    a2, v2 = _cap_down(R, sin2)
    a3, v3 = _kterms(H, sol["B"], sol["s1"], sol["s2"], tol)
    a4 = math.pi * m1 * hyp1 * ((l + sol["xs1"]) ** 2 - (l + xh1) ** 2)
    v4 = (math.pi * m1 * m1 / 3.0) * ((l + sol["xs1"]) ** 3 - (l + xh1) ** 3)
    a5 = math.pi * m2 * hyp2 * ((r - sol["xs2"]) ** 2 - (r - xh2) ** 2)
    v5 = (math.pi * m2 * m2 / 3.0) * ((r - sol["xs2"]) ** 3 - (r - xh2) ** 3)
    breakdown = _breakdown(
        {"S1": a1, "S2": a2, "S3": a3, "S4": a4, "S5": a5},
        {"V1": v1, "V2": v2, "V3": v3, "V4": v4, "V5": v5},
    )
    glue = {
        "B": sol["B"],
        "c": sol["c"],
        "T": sol["T"],
        "s1": sol["s1"],
        "s2": sol["s2"],
        "xs1": sol["xs1"],
        "ys1": sol["ys1"],
        "xs2": sol["xs2"],
        "ys2": sol["ys2"],
        "xh1": xh1,
        "yh1": yh1,
        "xh2": xh2,
        "yh2": yh2,
        "root_index": float(root_index),
        "root_count": float(len(sols)),
    }
    return CandidateSet(
        domain=spec,
        H=H,
        structure="double-cone-nodoid",
        glue=glue,
        generatrix=curve,
        free_pieces=tuple(free),
        breakdown=breakdown,
    )


# ---------------------------------------------------------------------------
# Cone (n = 3)
# ---------------------------------------------------------------------------


def _cone_quantities(B: float, l: float, m: float, H: float, tol: float) -> dict[str, float]:
    s1 = -_s_tangent_down(H, m, B)
    s_v = _s_vertical(H, B)
    X1 = _kernels.kenmotsu_x(H, B, 0.0, s1, tol)
    Xv = _kernels.kenmotsu_x(H, B, 0.0, s_v, tol)
    y1 = _y_of(H, B, s1)
    return {
        "B": B,
        "s1": s1,
        "s_v": s_v,
        "xs1": X1 - Xv,  # frame with the vertical-tangency plane at x = 0
        "ys1": y1,
        "g": y1 - (l + X1 - Xv) * m,
    }


def _scan_face_nodoids(l: float, m: float, H: float, tol: float) -> list[dict[str, float]]:
    """Shape parameters B > 1 whose profile is tangent to the slant line
    y = m (l + x) at s1 < 0 and meets the plane x = 0 with a vertical
    tangent at s_v > 0 (so a flat face can close the set there)."""
    apex = l * m
    B_lo = 1.0 + 1e-9
    B_hi = 2.0 * H * apex - 1.0
    if not B_hi > B_lo:
        return []
    Bs = _grid(B_lo, B_hi)
    zeros = np.zeros_like(Bs)
    s1 = -_s_tangent_down(H, m, Bs)
    s_v = _s_vertical(H, Bs)
    X1 = _kernels.kenmotsu_x_many(H, Bs, zeros, s1)
    Xv = _kernels.kenmotsu_x_many(H, Bs, zeros, s_v)
    G = _y_of(H, Bs, s1) - (l + X1 - Xv) * m

    def g(B: float) -> float:
        return _cone_quantities(B, l, m, H, tol)["g"]

    roots = _dedupe(
        root
        for lo, hi in _brackets(Bs, G)
        if (root := _refine(g, lo, hi)) is not None
    )
    out = []
    for B in roots:
        q = _cone_quantities(B, l, m, H, tol)
        q["y_face"] = math.sqrt(B * B - 1.0) / (2.0 * H)
        q["T"] = (1.0 - B * B) / (4.0 * H)
        out.append(q)
    return out


def cone_candidate(
    l: float,
    theta: float,
    H: float,
    *,
    check_containment: bool = True,
    tol: float = 1e-12,
) -> CandidateSet:
    """Candidate in the cone with vertex at (-l, 0) and base face at x = 0:
    a sphere cap of radius 1/H at the vertex, a wall run along the slant
    wall, a free profile smoothing the rim that ends with a vertical
    tangent on the face, and the face disk it cuts there.  When several
    gluing solutions are admissible the cheapest ratio is returned."""
    spec = build_domain("cone", 3, l=l, theta=theta)
    _require_curvature(H)
    H = float(H)
    l = float(l)
    m1 = math.tan(theta)
    R = 1.0 / H
    hyp1 = math.hypot(1.0, m1)
    sin1, cos1 = m1 / hyp1, 1.0 / hyp1
    c1x = -l + R / sin1
    xh1, yh1 = -l + R * cos1 * cos1 / sin1, R * cos1
    scale = 1.0 + max(l, l * m1)
    tiny = 1e-9 * scale
    sols = [
        s
        for s in _scan_face_nodoids(l, m1, H, tol)
        if xh1 <= s["xs1"] + tiny and s["xs1"] <= tiny
    ]
    if not sols:
        raise InadmissibleError(
            f"free pieces of radius 1/H = {R:.6g} do not fit this cone at "
            f"H = {H:.6g}: no admissible wall-to-face profile exists"
        )

    def _build(sol: dict[str, float]) -> CandidateSet:
        pieces: list[Piece] = [SphereArc(c1x, R, math.pi, 0.5 * math.pi + theta)]
        free = [0]
        if sol["xs1"] - xh1 > tiny:
            pieces.append(Segment(xh1, yh1, sol["xs1"], sol["ys1"]))
        mid = _kenmotsu_pieces(H, sol["B"], sol["s1"], sol["s_v"], sol["xs1"], tol)
        free.extend(range(len(pieces), len(pieces) + len(mid)))
        pieces.extend(mid)
        xe, ye = piece_end(mid[-1])
        pieces.append(Segment(xe, ye, xe, 0.0))
        curve = PiecewiseCurve(3, tuple(pieces))
        curve.validate()
        if check_containment:
            _require_contained(spec, curve)
        a1, v1 = _cap_up(R, -sin1)
        a3, v3 = _kterms(H, sol["B"], sol["s1"], sol["s_v"], tol)
        a4 = math.pi * m1 * hyp1 * ((l + sol["xs1"]) ** 2 - (l + xh1) ** 2)
        v4 = (math.pi * m1 * m1 / 3.0) * ((l + sol["xs1"]) ** 3 - (l + xh1) ** 3)
        breakdown = _breakdown(
            {
                "S0": math.pi * sol["y_face"] ** 2,
                "S1": a1,
                "S3": a3,
                "S4": a4,
            },
            {"V1": v1, "V3": v3, "V4": v4},
        )
        glue = {
            "B": sol["B"],
            "T": sol["T"],
            "s1": sol["s1"],
            "s_v": sol["s_v"],
            "xs1": sol["xs1"],
            "ys1": sol["ys1"],
            "xh1": xh1,
            "yh1": yh1,
            "y_face": sol["y_face"],
            "root_count": float(len(sols)),
        }
        return CandidateSet(
            domain=spec,
            H=H,
            structure="cone-nodoid",
            glue=glue,
            generatrix=curve,
            free_pieces=tuple(free),
            breakdown=breakdown,
        )

    built: list[CandidateSet] = []
    for sol in sols:
        try:
            built.append(_build(sol))
        except InadmissibleError:
            continue
    if not built:
        raise InadmissibleError(
            f"every wall-to-face gluing at H = {H:.6g} leaves the cone"
        )
    return min(built, key=lambda cand: cand.breakdown.ratio)


# ---------------------------------------------------------------------------
# Hourglass (n = 3)
# ---------------------------------------------------------------------------


def _middle_class(H: float, kb: float) -> str:
    cls = classify(delaunay_params(KenmotsuParams(H, kb)))
    if cls is DelaunayClass.UNDULOID:
        return "unduloid-max" if kb > 0 else "unduloid-min"
    return cls.name.lower()


def _hg_outer_variants(
    a: float, b: float, c: float, d: float, m2: float, H: float, tol: float, tiny: float
) -> list[dict[str, Any]]:
    """Ways to close a candidate off near the outer corner at (a, b): a
    free profile tangent to the outer wall that meets the face x = a with a
    vertical tangent (plus the face disk), or a sphere cap tangent to the
    outer wall that descends to the axis before the face."""
    variants: list[dict[str, Any]] = []
    for sol in _scan_face_nodoids(b / m2, m2, H, tol):
        attach_x = a + sol["xs1"]
        if sol["xs1"] <= tiny and attach_x >= c - tiny:
            variants.append(
                {"kind": "nodoid", "attach_x": attach_x, "attach_y": sol["ys1"], **sol}
            )
    R = 1.0 / H
    hyp = math.hypot(1.0, m2)
    x_c = (R * hyp - (d - m2 * c)) / m2
    x_t = x_c - R * m2 / hyp
    y_t = R / hyp
    if x_t >= c - tiny and x_c + R <= a + tiny:
        variants.append(
            {"kind": "arc", "attach_x": x_t, "attach_y": y_t, "x_c": x_c}
        )
    return variants


def _hg_case_i(
    b: float, c: float, m1: float, H: float, tol: float, tiny: float
) -> list[dict[str, Any]]:
    """Middle profile tangent to the inner walls at +-x_t, inscribed in the
    corner at (0, b): an ordinate maximum at x = 0 with the bulge touching
    both walls from below."""
    kb_lo = m1 / math.hypot(1.0, m1) + 1e-12
    kb_hi = 2.0 * H * b - 1.0
    if not kb_hi > kb_lo:
        return []
    Bs = _grid(kb_lo, kb_hi)
    s_t = _s_tangent_down(H, m1, Bs)
    X = _kernels.kenmotsu_x_many(H, Bs, np.zeros_like(Bs), s_t)
    G = _y_of(H, Bs, s_t) - (b - m1 * X)

    def g(kb: float) -> float:
        s = _s_tangent_down(H, m1, kb)
        return _y_of(H, kb, s) - (b - m1 * _kernels.kenmotsu_x(H, kb, 0.0, s, tol))

    out = []
    for kb in _dedupe(
        root
        for lo, hi in _brackets(Bs, G)
        if (root := _refine(g, lo, hi)) is not None
    ):
        s_t = _s_tangent_down(H, m1, kb)
        x_t = _kernels.kenmotsu_x(H, kb, 0.0, s_t, tol)
        if -tiny <= x_t <= c + tiny:
            out.append(
                {
                    "case": "i",
                    "kb": kb,
                    "s_end": s_t,
                    "x_t": x_t,
                    "y_t": _y_of(H, kb, s_t),
                }
            )
    return out


def _hg_case_ii(
    b: float, c: float, d: float, m1: float, H: float, tol: float, tiny: float
) -> list[dict[str, Any]]:
    """Middle profile pinned at the reentrant corners (+-c, d), symmetric
    about x = 0 where it has an ordinate extremum.  Both extremum kinds are
    scanned; the incidence condition is x(s) = c at the first ordinate
    crossing of d.  Bulge middles that overshoot the inner wall line are
    dropped: the gap to the line y = b - m1 x is smallest where the profile
    slope equals -m1, so one tangency-point evaluation decides containment
    exactly."""
    wD = 2.0 * H * d
    sin1 = m1 / math.hypot(1.0, m1)
    out: list[dict[str, Any]] = []

    def collect(lo: float, hi: float, s_of) -> None:
        if not hi > lo:
            return
        Bs = _grid(lo, hi)
        G = _kernels.kenmotsu_x_many(H, Bs, np.zeros_like(Bs), s_of(Bs)) - c

        def g(kb: float) -> float:
            return _kernels.kenmotsu_x(H, kb, 0.0, s_of(kb), tol) - c

        for kb in _dedupe(
            root
            for blo, bhi in _brackets(Bs, G)
            if (root := _refine(g, blo, bhi)) is not None
        ):
            s_end = s_of(kb)
            if kb >= sin1:
                s_t = _s_tangent_down(H, m1, kb)
                if s_t <= s_end:
                    gap = (
                        b
                        - m1 * _kernels.kenmotsu_x(H, kb, 0.0, s_t, tol)
                        - _y_of(H, kb, s_t)
                    )
                    if gap < -tiny:
                        continue
            out.append(
                {
                    "case": "ii",
                    "kb": kb,
                    "s_end": s_end,
                    "x_t": c,
                    "y_t": d,
                }
            )

    collect(
        max(abs(1.0 - wD), 1e-9),
        min(1.0 + wD, 2.0 * H * b - 1.0),
        lambda B: _s_level_from_max(H, wD, B),
    )
    collect(
        -1.0 + 1e-9,
        -abs(1.0 - wD) - 1e-9,
        lambda B: _s_level_from_min(H, wD, B),
    )
    return out


def _hg_case_iii(
    a: float, c: float, d: float, m2: float, H: float, tol: float, tiny: float
) -> list[dict[str, Any]]:
    """Middle profile with an ordinate minimum at x = 0, tangent to the
    outer walls at +-x_t from below (it dips through the neck plane between
    the walls without touching the inner corners)."""
    hi = -(m2 / math.hypot(1.0, m2))
    lo = -1.0 + 1e-9
    if not hi > lo:
        return []
    Bs = _grid(lo, hi)
    s_t = _s_tangent_up_second(H, m2, Bs)
    X = _kernels.kenmotsu_x_many(H, Bs, np.zeros_like(Bs), s_t)
    G = _y_of(H, Bs, s_t) - (m2 * (X - c) + d)

    def g(kb: float) -> float:
        s = _s_tangent_up_second(H, m2, kb)
        x = _kernels.kenmotsu_x(H, kb, 0.0, s, tol)
        return _y_of(H, kb, s) - (m2 * (x - c) + d)

    out = []
    wD = 2.0 * H * d
    for kb in _dedupe(
        root
        for blo, bhi in _brackets(Bs, G)
        if (root := _refine(g, blo, bhi)) is not None
    ):
        s_t = _s_tangent_up_second(H, m2, kb)
        x_t = _kernels.kenmotsu_x(H, kb, 0.0, s_t, tol)
        if not (c - tiny <= x_t <= a + tiny):
            continue
        # the profile must still be at or below ordinate d when it passes
        # the reentrant corner abscissa, else it cuts through the corner
        if kb > wD - 1.0:
            continue
        s_d = _s_level_from_min(H, wD, kb)
        if _kernels.kenmotsu_x(H, kb, 0.0, s_d, tol) < c - tiny:
            continue
        out.append(
            {
                "case": "iii",
                "kb": kb,
                "s_end": s_t,
                "x_t": x_t,
                "y_t": _y_of(H, kb, s_t),
            }
        )
    return out


def _hg_case_iv(
    a: float, c: float, d: float, m2: float, H: float, tiny: float
) -> list[dict[str, Any]]:
    """Two-component candidate: on each side a sphere cap rises from the
    axis to a tangency with the outer wall (the component then continues
    along the wall to the outer closure)."""
    R = 1.0 / H
    hyp = math.hypot(1.0, m2)
    x_c = (R * hyp - (d - m2 * c)) / m2
    x_t = x_c - R * m2 / hyp
    if x_c - R >= tiny and x_t >= c - tiny:
        return [{"case": "iv", "x_c": x_c, "x_t": x_t, "y_t": R / hyp}]
    return []


def _hg_assemble(
    spec: DomainSpec,
    sol: Mapping[str, Any],
    outer: Mapping[str, Any],
    H: float,
    tol: float,
    tiny: float,
    check_containment: bool,
) -> CandidateSet | None:
    p = spec.parameters
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    case = str(sol["case"])
    R = 1.0 / H
    m2 = (b - d) / (a - c)
    attach_x, attach_y = float(outer["attach_x"]), float(outer["attach_y"])

    right: list[Piece] = []
    corners: set[int] = set()
    free: set[int] = set()
    areas: dict[str, float] = {}
    vols: dict[str, float] = {}

    def add_wall(x1: float, y1: float, key: str) -> None:
        x0, y0 = piece_end(right[-1])
        if math.hypot(x1 - x0, y1 - y0) <= tiny:
            return
        right.append(Segment(x0, y0, x1, y1))
        fa, fv = _frustum_terms(x0, y0, x1, y1)
        areas[key] = areas.get(key, 0.0) + 2.0 * fa
        vols["V" + key[1:]] = vols.get("V" + key[1:], 0.0) + 2.0 * fv

    if case == "iv":
        if attach_x < sol["x_t"] - tiny:
            return None
        hyp = math.hypot(1.0, m2)
        arc = SphereArc(sol["x_c"], R, math.pi, math.acos(-m2 / hyp))
        right.append(arc)
        free.add(0)
        a1, v1 = _cap_up(R, -m2 / hyp)
        areas["S1"] = 2.0 * a1
        vols["V1"] = 2.0 * v1
        add_wall(attach_x, attach_y, "S3")
    else:
        kb = float(sol["kb"])
        mids = _kenmotsu_pieces(H, kb, 0.0, float(sol["s_end"]), 0.0, tol)
        free.update(range(len(mids)))
        right.extend(mids)
        a1, v1 = _kterms(H, kb, 0.0, float(sol["s_end"]), tol)
        areas["S1"] = 2.0 * a1
        vols["V1"] = 2.0 * v1
        if case == "i":
            add_wall(c, d, "S2")
            corners.add(len(right) - 1)  # wall corner at (c, d)
            add_wall(attach_x, attach_y, "S3")
        elif case == "ii":
            corners.add(len(right) - 1)  # profile pinned at the corner (c, d)
            add_wall(attach_x, attach_y, "S3")
        else:
            if attach_x < sol["x_t"] - tiny:
                return None
            add_wall(attach_x, attach_y, "S3")

    if outer["kind"] == "nodoid":
        omids = _kenmotsu_pieces(
            H, float(outer["B"]), float(outer["s1"]), float(outer["s_v"]), attach_x, tol
        )
        free.update(range(len(right), len(right) + len(omids)))
        right.extend(omids)
        xe, ye = piece_end(omids[-1])
        right.append(Segment(xe, ye, xe, 0.0))
        a4, v4 = _kterms(H, float(outer["B"]), float(outer["s1"]), float(outer["s_v"]), tol)
        areas["S4"] = 2.0 * a4
        vols["V4"] = 2.0 * v4
        areas["S0"] = 2.0 * math.pi * float(outer["y_face"]) ** 2
    else:
        hyp = math.hypot(1.0, m2)
        arc2 = SphereArc(float(outer["x_c"]), R, math.acos(-m2 / hyp), 0.0)
        free.add(len(right))
        right.append(arc2)
        a4, v4 = _cap_down(R, -m2 / hyp)
        areas["S4"] = 2.0 * a4
        vols["V4"] = 2.0 * v4

    if case == "iv":
        pieces = list(right)
        corners_full = set(corners)
        free_full = set(free)
        components = 2
    else:
        n_r = len(right)
        pieces = [reflect_piece(q) for q in reversed(right)] + right
        corners_full = {n_r - 2 - j for j in corners} | {n_r + j for j in corners}
        if isinstance(right[0], Segment):
            # near-straight middle collapsed to its chord: the mirrored
            # chords meet at x = 0 with an O(B) kink
            corners_full.add(n_r - 1)
        free_full = {n_r - 1 - i for i in free} | {n_r + i for i in free}
        components = 1

    curve = PiecewiseCurve(3, tuple(pieces))
    curve.validate(corner_junctions=corners_full)
    if check_containment and not _contained_ok(spec, curve):
        return None

    glue: dict[str, float] = {}
    for key in ("kb", "s_end", "x_t", "y_t", "x_c"):
        if key in sol:
            glue[key] = float(sol[key])
    if "kb" in sol:
        kb = float(sol["kb"])
        glue["T"] = (1.0 - kb * kb) / (4.0 * H)
    for key in ("B", "s1", "s_v", "y_face", "x_c"):
        if key in outer:
            glue["outer_" + key] = float(outer[key])
    glue["outer_x1"] = attach_x
    glue["outer_y1"] = attach_y

    middle = "" if case == "iv" else "/" + _middle_class(H, float(sol["kb"]))
    structure = f"hourglass-{case}{middle}/outer-{outer['kind']}"
    return CandidateSet(
        domain=spec,
        H=H,
        structure=structure,
        glue=glue,
        generatrix=curve,
        free_pieces=tuple(sorted(free_full)),
        breakdown=_breakdown(areas, vols),
        components=components,
    )


_HOURGLASS_CASES = ("i", "ii", "iii", "iv")


def hourglass_candidates(
    a: float,
    b: float,
    c: float,
    d: float,
    H: float,
    *,
    cases: Sequence[str] = _HOURGLASS_CASES,
    check_containment: bool = True,
    tol: float = 1e-12,
) -> list[CandidateSet]:
    """Every admissible candidate in the hourglass at mean curvature H.

    The four middle structures are: (i) a bulge profile inscribed
    tangentially in the inner corner at (0, b); (ii) a profile pinned at
    the reentrant corners (+-c, d); (iii) a neck profile tangent to the
    outer walls on both sides; (iv) two components whose inner boundary is
    a sphere cap joining the outer wall to the axis.  Each is combined with
    every admissible outer closure near (+-a, b) (wall-tangent profile
    ending on the face, or sphere cap descending to the axis); candidates
    that fail the ordering or containment checks are dropped.  The list is
    empty when nothing is admissible at this H.
    """
    spec = build_domain("hourglass", 3, a=a, b=b, c=c, d=d)
    _require_curvature(H)
    H = float(H)
    a, b, c, d = (float(v) for v in (a, b, c, d))
    unknown = set(cases) - set(_HOURGLASS_CASES)
    if unknown:
        raise InvalidParamsError(
            f"unknown hourglass case(s) {sorted(unknown)}; choose from {_HOURGLASS_CASES}"
        )
    m1 = (b - d) / c
    m2 = (b - d) / (a - c)
    tiny = 1e-9 * (1.0 + max(a, b))
    outers = _hg_outer_variants(a, b, c, d, m2, H, tol, tiny)
    if not outers:
        return []
    sols: list[dict[str, Any]] = []
    if "i" in cases:
        sols += _hg_case_i(b, c, m1, H, tol, tiny)
    if "ii" in cases:
        sols += _hg_case_ii(b, c, d, m1, H, tol, tiny)
    if "iii" in cases:
        sols += _hg_case_iii(a, c, d, m2, H, tol, tiny)
    if "iv" in cases:
        sols += _hg_case_iv(a, c, d, m2, H, tiny)
    out: list[CandidateSet] = []
    for sol in sols:
        for outer in outers:
            cand = _hg_assemble(spec, sol, outer, H, tol, tiny, check_containment)
            if cand is not None:
                out.append(cand)
    return out


# ---------------------------------------------------------------------------
# Ratio evaluation and containment
# ---------------------------------------------------------------------------


def candidate_ratio(cand: CandidateSet, tol: float = 1e-12) -> tuple[float, RatioBreakdown]:
    """Perimeter-to-volume ratio of the candidate from generic quadrature
    on its generatrix, cross-checked against the decomposed terms.

    The two routes are computed differently (graph-form ordinate integrals
    versus arc-length quadratures and cap/frustum closed forms), so their
    agreement validates both the assembly and the bookkeeping.
    """
    area, vol = curve_area_volume(cand.generatrix, tol)
    area *= cand.components
    vol *= cand.components
    bd = cand.breakdown
    if abs(area - bd.perimeter) > 1e-9 * max(1.0, bd.perimeter) or abs(
        vol - bd.volume
    ) > 1e-9 * max(1.0, bd.volume):
        raise NumericsError(
            f"decomposed terms disagree with the revolved curve: quadrature "
            f"(P, V) = ({area!r}, {vol!r}) vs decomposition "
            f"({bd.perimeter!r}, {bd.volume!r}) for {cand.structure}"
        )
    return (area / vol, bd)


def _domain_extent(spec: DomainSpec) -> tuple[float, float]:
    p = spec.parameters
    if spec.family == "cylinder":
        return (0.0, p["l"])
    if spec.family == "cone":
        return (-p["l"], 0.0)
    if spec.family == "double-cone":
        return (-p["l"], p["r"])
    return (-p["a"], p["a"])


def _contained_ok(
    spec: DomainSpec, curve: PiecewiseCurve, slack_rel: float = 1e-9, per_piece: int = 17
) -> bool:
    lo, hi = _domain_extent(spec)
    slack = slack_rel * (1.0 + max(abs(lo), abs(hi)))
    for piece in curve.pieces:
        xs, ys = sample_piece(piece, per_piece, 1e-10)
        for x, y in zip(xs.tolist(), ys.tolist()):
            if y < -slack:
                return False
            cx = min(max(x, lo), hi)
            if abs(x - cx) > slack:
                return False
            if y > profile_height(spec, cx) + slack:
                return False
    return True


def _require_contained(spec: DomainSpec, curve: PiecewiseCurve) -> None:
    if not _contained_ok(spec, curve):
        raise InadmissibleError(
            "assembled candidate leaves the domain: the requested curvature "
            "is outside the admissible interval"
        )
