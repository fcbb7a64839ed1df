"""Parametric rotationally invariant domains.

Four families are supported, each described by the generatrix of its boundary
in the (x, y) half-plane:

* ``cylinder`` (l, r): the solid cylinder (0, l) x B_r, any dimension n >= 3.
* ``cone`` (l, theta): the solid cone whose generatrix bounds the right
  triangle with leg [-l, 0] on the axis and angle theta at the apex (-l, 0).
* ``double-cone`` (l, r, theta): two coaxial cones glued along their common
  base; the generatrix bounds the triangle with base [-l, r] on the axis,
  angle theta at (-l, 0), and peak (0, l tan(theta)).
* ``hourglass`` (a, b, c, d): the nonconvex domain whose generatrix, for
  x >= 0, descends from (0, b) to the neck (c, d), rises to (a, b), and
  closes with the face x = a; mirrored across {x = 0}.

Every spec carries its generatrix as a PiecewiseCurve, so metrics are
computed by the generic surface-of-revolution machinery.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Any, Mapping

from .errors import InvalidParamsError
from .revolve import (
    PiecewiseCurve,
    Segment,
    curve_area_volume,
    piece_end,
    piece_start,
    unit_ball_volume,
)

__all__ = [
    "FAMILIES",
    "DomainSpec",
    "DomainMetrics",
    "build_domain",
    "domain_metrics",
    "inscribed_ball_radius",
    "faber_krahn_bound",
    "profile_height",
    "domain_to_json",
    "domain_from_json",
]

FAMILIES = ("cylinder", "cone", "double-cone", "hourglass")

_FAMILY_PARAMS = {
    "cylinder": ("l", "r"),
    "cone": ("l", "theta"),
    "double-cone": ("l", "r", "theta"),
    "hourglass": ("a", "b", "c", "d"),
}


@dataclass(frozen=True)
class DomainSpec:
    """A rotationally invariant domain: family tag, dimension, parameters,
    and the assembled generatrix of its boundary."""

    family: str
    n: int
    parameters: dict[str, float]
    generatrix: PiecewiseCurve


@dataclass(frozen=True)
class DomainMetrics:
    volume: float
    area: float
    ratio: float  # area / volume


def _require_positive(**values: float) -> None:
    for name, v in values.items():
        if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
            raise InvalidParamsError(f"parameter {name} must be a positive number, got {v!r}")


def _require_angle(theta: float) -> None:
    if not (0.0 < theta < math.pi / 2):
        raise InvalidParamsError(f"theta must lie strictly between 0 and pi/2, got {theta!r}")


def _polyline(points: list[tuple[float, float]]) -> tuple[Segment, ...]:
    return tuple(
        Segment(points[i][0], points[i][1], points[i + 1][0], points[i + 1][1])
        for i in range(len(points) - 1)
    )


def _segments_intersect(
    p: tuple[float, float],
    q: tuple[float, float],
    r: tuple[float, float],
    s: tuple[float, float],
) -> bool:
    """Proper or touching intersection of segments pq and rs."""

    def orient(a, b, c):
        return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])

    def on(a, b, c):
        return (
            min(a[0], b[0]) - 1e-15 <= c[0] <= max(a[0], b[0]) + 1e-15
            and min(a[1], b[1]) - 1e-15 <= c[1] <= max(a[1], b[1]) + 1e-15
        )

    o1, o2 = orient(p, q, r), orient(p, q, s)
    o3, o4 = orient(r, s, p), orient(r, s, q)
    if ((o1 > 0) != (o2 > 0)) and ((o3 > 0) != (o4 > 0)) and o1 != 0 and o2 != 0:
        return True
    for o, a, b, c in ((o1, p, q, r), (o2, p, q, s), (o3, r, s, p), (o4, r, s, q)):
        if o == 0 and on(a, b, c):
            return True
    return False


def _check_simple(curve: PiecewiseCurve) -> None:
    """Reject generatrices whose non-adjacent segments intersect."""
    ends = [(piece_start(p), piece_end(p)) for p in curve.pieces]
    for i in range(len(ends)):
        for j in range(i + 2, len(ends)):
            if i == 0 and j == len(ends) - 1:
                continue  # first and last may share the closing axis point
            if _segments_intersect(*ends[i], *ends[j]):
                raise InvalidParamsError(f"generatrix self-intersects (pieces {i} and {j})")


def build_domain(family: str, n: int = 3, **params: float) -> DomainSpec:
    """Assemble the generatrix of the requested domain family.

    Parameters by family: cylinder(l, r); cone(l, theta);
    double-cone(l, r, theta); hourglass(a, b, c, d) with a > c > 0, b > d > 0.
    """
    family = family.replace("_", "-").lower()
    if family not in FAMILIES:
        raise InvalidParamsError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if not isinstance(n, int) or n < 3:
        raise InvalidParamsError(f"dimension must be an integer >= 3, got {n!r}")
    expected = _FAMILY_PARAMS[family]
    if set(params) != set(expected):
        raise InvalidParamsError(
            f"family {family!r} takes parameters {expected}, got {tuple(sorted(params))}"
        )

    if family == "cylinder":
        l, r = params["l"], params["r"]
        _require_positive(l=l, r=r)
        pts = [(0.0, 0.0), (0.0, r), (l, r), (l, 0.0)]
    elif family == "cone":
        l, theta = params["l"], params["theta"]
        _require_positive(l=l)
        _require_angle(theta)
        pts = [(-l, 0.0), (0.0, l * math.tan(theta)), (0.0, 0.0)]
    elif family == "double-cone":
        l, r, theta = params["l"], params["r"], params["theta"]
        _require_positive(l=l, r=r)
        _require_angle(theta)
        pts = [(-l, 0.0), (0.0, l * math.tan(theta)), (r, 0.0)]
    else:
        a, b, c, d = params["a"], params["b"], params["c"], params["d"]
        _require_positive(a=a, b=b, c=c, d=d)
        if not (a > c and b > d):
            raise InvalidParamsError("hourglass needs a > c > 0 and b > d > 0")
        pts = [
            (-a, 0.0),
            (-a, b),
            (-c, d),
            (0.0, b),
            (c, d),
            (a, b),
            (a, 0.0),
        ]

    curve = PiecewiseCurve(n, _polyline(pts))
    curve.validate(corner_junctions=set(range(len(curve.pieces) - 1)))
    _check_simple(curve)
    return DomainSpec(family, n, {k: float(params[k]) for k in expected}, curve)


def domain_metrics(spec: DomainSpec) -> DomainMetrics:
    """Volume, boundary area, and their ratio, from the generatrix."""
    area, volume = curve_area_volume(spec.generatrix)
    return DomainMetrics(volume=volume, area=area, ratio=area / volume)


def profile_height(spec: DomainSpec, x: float) -> float:
    """Height of the domain's generating profile above abscissa ``x``.

    The rotationally invariant domain is ``{(x, z) : |z| < profile_height(x)}``
    in cylindrical coordinates; the height is 0 outside the axial extent.
    """
    p = spec.parameters
    if spec.family == "cylinder":
        return p["r"] if 0.0 <= x <= p["l"] else 0.0
    if spec.family == "cone":
        l, theta = p["l"], p["theta"]
        return (l + x) * math.tan(theta) if -l <= x <= 0.0 else 0.0
    if spec.family == "double-cone":
        l, r, theta = p["l"], p["r"], p["theta"]
        if -l <= x <= 0.0:
            return (l + x) * math.tan(theta)
        if 0.0 < x <= r:
            return (l / r) * (r - x) * math.tan(theta)
        return 0.0
    a, b, c, d = p["a"], p["b"], p["c"], p["d"]
    u = abs(x)
    if u <= c:
        return b - (b - d) / c * u
    if u <= a:
        return d + (b - d) / (a - c) * (u - c)
    return 0.0


def faber_krahn_bound(spec: DomainSpec) -> float:
    """Ball-comparison lower bound n (omega_n / |domain|)^{1/n} for the
    perimeter-to-volume minimization value."""
    n = spec.n
    volume = domain_metrics(spec).volume
    return n * (unit_ball_volume(n) / volume) ** (1.0 / n)


# ---------------------------------------------------------------------------
# Inscribed ball
# ---------------------------------------------------------------------------


def _dist_point_segment(px: float, py: float, seg: Segment) -> float:
    vx, vy = seg.x1 - seg.x0, seg.y1 - seg.y0
    wx, wy = px - seg.x0, py - seg.y0
    t = (wx * vx + wy * vy) / (vx * vx + vy * vy)
    t = min(1.0, max(0.0, t))
    return math.hypot(wx - t * vx, wy - t * vy)


def _inside_polygon(px: float, py: float, verts: list[tuple[float, float]]) -> bool:
    inside = False
    m = len(verts)
    for i in range(m):
        x0, y0 = verts[i]
        x1, y1 = verts[(i + 1) % m]
        if (y0 > py) != (y1 > py):
            xc = x0 + (py - y0) / (y1 - y0) * (x1 - x0)
            if px < xc:
                inside = not inside
    return inside


def inscribed_ball_radius(spec: DomainSpec, tol: float = 1e-8) -> float:
    """Radius of the largest ball contained in the domain.

    For a solid of revolution a ball centred at planar point (x, y), y >= 0,
    fits exactly when the half-disk of the same radius fits in the planar
    generatrix region, whose only walls are the non-axis sides.  Cylinder and
    cone have closed forms; the others maximize the distance-to-wall function
    over the region by iterative grid refinement.
    """
    p = spec.parameters
    if spec.family == "cylinder":
        return min(p["l"] / 2.0, p["r"])
    if spec.family == "cone":
        st = math.sin(p["theta"])
        return p["l"] * st / (1.0 + st)

    walls = [s for s in spec.generatrix.pieces if isinstance(s, Segment)]
    verts = [piece_start(s) for s in walls] + [piece_end(walls[-1])]
    # close the polygon along the axis (generatrix runs axis to axis)
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    lo_x, hi_x, hi_y = min(xs), max(xs), max(ys)

    def depth(px: float, py: float) -> float:
        d = min(_dist_point_segment(px, py, s) for s in walls)
        if py <= 0.0:
            # the axis itself is interior; on it, inside means strictly
            # between the generatrix endpoints
            inside = lo_x < px < hi_x
        else:
            inside = _inside_polygon(px, py, verts)
        return d if inside else -d

    cx, cy = 0.5 * (lo_x + hi_x), 0.5 * hi_y
    wx, wy = hi_x - lo_x, hi_y
    best = (cx, 0.0, depth(cx, 0.0))
    grid = 24
    while max(wx, wy) > tol:
        for i in range(grid + 1):
            for j in range(grid + 1):
                px = cx - 0.5 * wx + wx * i / grid
                py = min(hi_y, max(0.0, cy - 0.5 * wy + wy * j / grid))
                d = depth(px, py)
                if d > best[2]:
                    best = (px, py, d)
        cx, cy = best[0], best[1]
        # window shrinks to a 3-cell neighbourhood of the incumbent
        wx *= 3.0 / grid
        wy *= 3.0 / grid
    return best[2]


def domain_to_json(spec: DomainSpec) -> str:
    """Serialize as {"family", "n", "parameters"} (generatrix is rebuilt on load)."""
    return json.dumps(
        {"family": spec.family, "n": spec.n, "parameters": spec.parameters},
        sort_keys=True,
    )


def domain_from_json(doc: str | Mapping[str, Any]) -> DomainSpec:
    """Inverse of domain_to_json; accepts a JSON string or a parsed mapping."""
    data = json.loads(doc) if isinstance(doc, str) else dict(doc)
    try:
        family = data["family"]
        n = data["n"]
        parameters = data["parameters"]
    except (KeyError, TypeError) as exc:
        raise InvalidParamsError(f"domain document needs family/n/parameters: {exc}") from exc
    if not isinstance(parameters, Mapping):
        raise InvalidParamsError("parameters must be an object of numbers")
    return build_domain(str(family), int(n), **{str(k): float(v) for k, v in parameters.items()})
