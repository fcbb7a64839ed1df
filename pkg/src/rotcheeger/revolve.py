"""Surfaces of revolution generated by planar curves.

A rotationally invariant hypersurface in R^n is described by its generatrix
in the (x, y) half-plane (x along the rotation axis, y >= 0 the distance from
it).  This module provides the piece types a generatrix is assembled from,
the lateral area and enclosed volume of each piece, and a piecewise curve
container with continuity validation.

Piece types
-----------
* ``Segment``: straight piece — revolves to a cone frustum, cylinder wall, or
  flat annulus/disk (when vertical).
* ``SphereArc``: circular arc centred on the axis — revolves to a spherical
  zone or cap.
* ``DelaunayArc``: a branch of a constant-mean-curvature profile on which the
  ordinate is monotone (branches are delimited by profile extrema).  The
  ``mirror`` flag selects between the two x-orientations of the same ordinate
  range, which are mirror images.

Conventions
-----------
Areas are nonnegative; volumes are the signed ``omega_{n-1} * integral
y^{n-1} dx`` along the traversal.  A generatrix traversed with overall
increasing x above the axis (closing through the axis or vertical walls)
therefore accumulates positive enclosed volume.  Tangents are unit vectors
pointing along the traversal direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import _kernels
from ._kernels import _gk
from .delaunay import (
    DelaunayClass,
    DelaunayParams,
    classify,
    cos_sigma,
    profile_extrema,
    t_max,
)
from .errors import InvalidParamsError

__all__ = [
    "unit_ball_volume",
    "Segment",
    "SphereArc",
    "DelaunayArc",
    "Piece",
    "PiecewiseCurve",
    "piece_start",
    "piece_end",
    "piece_tangent_start",
    "piece_tangent_end",
    "reflect_piece",
    "piece_arclen",
    "piece_area",
    "piece_volume",
    "sample_piece",
    "curve_area_volume",
    "weighted_functionals",
]


def unit_ball_volume(k: int) -> float:
    """Volume of the unit ball in R^k: pi^{k/2} / Gamma(k/2 + 1).

    Evaluated through the even/odd factorial forms, which are exact for the
    small k that matter (k = 1 gives exactly 2.0, unlike the Gamma route).
    """
    if not isinstance(k, int) or k < 0:
        raise InvalidParamsError(f"ball dimension must be a nonnegative integer, got {k!r}")
    m, odd = divmod(k, 2)
    if odd:
        return 2.0 * math.factorial(m) * (4.0 * math.pi) ** m / math.factorial(k)
    return math.pi**m / math.factorial(m)


# ---------------------------------------------------------------------------
# Piece types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    """Straight generatrix piece from (x0, y0) to (x1, y1), y >= 0."""

    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self) -> None:
        for v in (self.x0, self.y0, self.x1, self.y1):
            if not math.isfinite(v):
                raise InvalidParamsError("segment endpoints must be finite")
        if min(self.y0, self.y1) < 0.0:
            raise InvalidParamsError("segment must stay in the closed upper half-plane")
        if self.x0 == self.x1 and self.y0 == self.y1:
            raise InvalidParamsError("segment endpoints coincide")


@dataclass(frozen=True)
class SphereArc:
    """Arc of the circle of radius r centred at (cx, 0), traversed from
    polar angle phi0 to phi1 (phi measured from the +x direction, so the
    curve point is (cx + r cos(phi), r sin(phi)) with phi in [0, pi])."""

    cx: float
    r: float
    phi0: float
    phi1: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.cx) and math.isfinite(self.r)) or self.r <= 0.0:
            raise InvalidParamsError("sphere arc needs a finite centre and r > 0")
        for phi in (self.phi0, self.phi1):
            if not -1e-12 <= phi <= math.pi + 1e-12:
                raise InvalidParamsError(
                    f"polar angle {phi!r} outside [0, pi]: arc would leave the half-plane"
                )
        if self.phi0 == self.phi1:
            raise InvalidParamsError("sphere arc endpoints coincide")


@dataclass(frozen=True)
class DelaunayArc:
    """Monotone-ordinate branch of a constant-mean-curvature profile.

    The piece starts at (x0, y0) and runs to ordinate y1; ``mirror`` = +-1
    selects which of the two mirror-image x-orientations is meant.  The
    abscissa along the piece is x(y) = x0 + mirror * graph_x(y0 -> y), with
    the endpoint cached as ``x1``.
    """

    n: int
    H: float
    T: float
    x0: float
    y0: float
    y1: float
    mirror: int = 1
    x1: float = field(init=False)

    def __post_init__(self) -> None:
        params = self.params  # validates n, H, T
        cls = classify(params)
        if cls in (DelaunayClass.CYLINDER, DelaunayClass.HYPERPLANE):
            raise InvalidParamsError(
                f"a {cls.name.lower()} generatrix piece is a Segment, not a DelaunayArc"
            )
        if self.mirror not in (1, -1):
            raise InvalidParamsError("mirror must be +1 or -1")
        if self.y0 == self.y1:
            raise InvalidParamsError("arc endpoints have equal ordinates")
        y_min, y_max = profile_extrema(params)
        lo, hi = min(self.y0, self.y1), max(self.y0, self.y1)
        slack = 1e-9 * max(1.0, hi)
        if lo < y_min - slack or hi > y_max + slack:
            raise InvalidParamsError(
                f"ordinate range [{lo}, {hi}] leaves the profile band [{y_min}, {y_max}]"
            )
        object.__setattr__(
            self,
            "x1",
            self.x0 + self.mirror * _kernels.graph_x(self.n, self.H, self.T, self.y0, self.y1),
        )

    @property
    def params(self) -> DelaunayParams:
        return DelaunayParams(self.n, self.H, self.T)


Piece = Union[Segment, SphereArc, DelaunayArc]


# ---------------------------------------------------------------------------
# Endpoints and tangents
# ---------------------------------------------------------------------------


def piece_start(p: Piece) -> tuple[float, float]:
    """Start point (x, y) of the traversal."""
    if isinstance(p, Segment):
        return (p.x0, p.y0)
    if isinstance(p, SphereArc):
        return (p.cx + p.r * math.cos(p.phi0), p.r * math.sin(p.phi0))
    return (p.x0, p.y0)


def piece_end(p: Piece) -> tuple[float, float]:
    """End point (x, y) of the traversal."""
    if isinstance(p, Segment):
        return (p.x1, p.y1)
    if isinstance(p, SphereArc):
        return (p.cx + p.r * math.cos(p.phi1), p.r * math.sin(p.phi1))
    return (p.x1, p.y1)


def _delaunay_tangent(p: DelaunayArc, y: float) -> tuple[float, float]:
    d = 1.0 if p.y1 > p.y0 else -1.0
    if y <= 0.0:
        # only a sphere profile touches the axis, and it arrives vertically
        return (0.0, d)
    c = cos_sigma(p.params, y)
    # Near a profile extremum the first-integral formula is ill-conditioned:
    # the stored T carries an absolute rounding error that y^{n-2} divides,
    # so |cos sigma| computed at an extremal ordinate misses 1 by up to
    # ~eps * t_max / y^{n-2}, and the sqrt below would amplify the miss into
    # a phantom slope.  Snap to the exact horizontal tangent whenever the
    # residual is within that conditioning error.
    pw = y ** (p.n - 2)
    scale = (pw + abs(p.T) + p.H * y ** (p.n - 1) + t_max(p.n, p.H)) / pw
    if 1.0 - abs(c) <= 64.0 * 2.220446049250313e-16 * scale:
        c = math.copysign(1.0, c)
    s = math.sqrt(max(0.0, 1.0 - c * c))
    return (p.mirror * d * c, d * s)


def piece_tangent_start(p: Piece) -> tuple[float, float]:
    """Unit tangent at the start, pointing along the traversal."""
    if isinstance(p, Segment):
        L = math.hypot(p.x1 - p.x0, p.y1 - p.y0)
        return ((p.x1 - p.x0) / L, (p.y1 - p.y0) / L)
    if isinstance(p, SphereArc):
        d = 1.0 if p.phi1 > p.phi0 else -1.0
        return (-d * math.sin(p.phi0), d * math.cos(p.phi0))
    return _delaunay_tangent(p, p.y0)


def piece_tangent_end(p: Piece) -> tuple[float, float]:
    """Unit tangent at the end, pointing along the traversal."""
    if isinstance(p, Segment):
        return piece_tangent_start(p)
    if isinstance(p, SphereArc):
        d = 1.0 if p.phi1 > p.phi0 else -1.0
        return (-d * math.sin(p.phi1), d * math.cos(p.phi1))
    return _delaunay_tangent(p, p.y1)


def reflect_piece(p: Piece) -> Piece:
    """Mirror image of a piece about the plane ``x = 0``, traversal reversed.

    Reflecting every piece of a curve, reversing their order, and prepending
    the result yields the full mirror-symmetric curve: if the original runs
    left to right, the reflected copy runs left to right through negative
    abscissas and ends where the original starts.
    """
    if isinstance(p, Segment):
        return Segment(-p.x1, p.y1, -p.x0, p.y0)
    if isinstance(p, SphereArc):
        return SphereArc(-p.cx, p.r, math.pi - p.phi1, math.pi - p.phi0)
    return DelaunayArc(p.n, p.H, p.T, -p.x1, p.y1, p.y0, -p.mirror)


# ---------------------------------------------------------------------------
# Arc length, lateral area, enclosed volume
# ---------------------------------------------------------------------------


def piece_arclen(p: Piece, tol: float = 1e-12) -> float:
    """Length of the generatrix piece."""
    if isinstance(p, Segment):
        return math.hypot(p.x1 - p.x0, p.y1 - p.y0)
    if isinstance(p, SphereArc):
        return p.r * abs(p.phi1 - p.phi0)
    return abs(_kernels.graph_arclen(p.n, p.H, p.T, p.y0, p.y1, tol))


def _segment_moment(y0: float, y1: float, k: int) -> float:
    """integral_0^1 (y0 + t (y1 - y0))^k dt, the mean of y^k along the piece."""
    if y0 == y1:
        return y0**k
    return (y1 ** (k + 1) - y0 ** (k + 1)) / ((k + 1) * (y1 - y0))


def piece_area(p: Piece, n: int, tol: float = 1e-12) -> float:
    """Lateral (n-1)-area swept by the piece: (n-1) omega_{n-1} integral y^{n-2} ds."""
    wn = unit_ball_volume(n - 1)
    if isinstance(p, Segment):
        L = math.hypot(p.x1 - p.x0, p.y1 - p.y0)
        return (n - 1) * wn * L * _segment_moment(p.y0, p.y1, n - 2)
    if isinstance(p, SphereArc):
        lo, hi = min(p.phi0, p.phi1), max(p.phi0, p.phi1)
        if n == 3:
            return 2.0 * math.pi * p.r * p.r * (math.cos(lo) - math.cos(hi))
        val = _gk.adaptive(lambda t: np.sin(t) ** (n - 2), lo, hi, tol)
        return (n - 1) * wn * p.r ** (n - 1) * val
    if n != p.n:
        raise InvalidParamsError(f"piece lives in dimension {p.n}, area requested in {n}")
    return (n - 1) * wn * abs(_kernels.graph_area(p.n, p.H, p.T, p.y0, p.y1, tol))


def piece_volume(p: Piece, n: int, tol: float = 1e-12) -> float:
    """Signed enclosed-volume contribution omega_{n-1} integral y^{n-1} dx
    along the traversal (vertical pieces contribute zero)."""
    wn = unit_ball_volume(n - 1)
    if isinstance(p, Segment):
        return wn * (p.x1 - p.x0) * _segment_moment(p.y0, p.y1, n - 1)
    if isinstance(p, SphereArc):
        # x = cx + r cos(phi) => dx = -r sin(phi) dphi
        val = _gk.adaptive(lambda t: np.sin(t) ** n, p.phi0, p.phi1, tol)
        return -wn * p.r**n * val
    if n != p.n:
        raise InvalidParamsError(f"piece lives in dimension {p.n}, volume requested in {n}")
    return wn * p.mirror * _kernels.graph_vol(p.n, p.H, p.T, p.y0, p.y1, tol)


# ---------------------------------------------------------------------------
# Sampling (rendering, certificates)
# ---------------------------------------------------------------------------


def sample_piece(p: Piece, k: int = 64, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
    """k+1 points along the piece as (x, y) arrays, start to end.

    Delaunay branches are sampled on a cosine-spaced ordinate grid so the
    polyline stays accurate near extrema, where uniform ordinate spacing
    would leave large abscissa gaps.
    """
    if k < 1:
        raise InvalidParamsError("need at least one sampling interval")
    if isinstance(p, Segment):
        t = np.linspace(0.0, 1.0, k + 1)
        return (p.x0 + t * (p.x1 - p.x0), p.y0 + t * (p.y1 - p.y0))
    if isinstance(p, SphereArc):
        phi = np.linspace(p.phi0, p.phi1, k + 1)
        return (p.cx + p.r * np.cos(phi), p.r * np.sin(phi))
    u = 0.5 * (1.0 - np.cos(np.linspace(0.0, math.pi, k + 1)))
    ys = p.y0 + u * (p.y1 - p.y0)
    xs = np.empty_like(ys)
    xs[0] = p.x0
    for i in range(1, k + 1):
        xs[i] = p.x0 + p.mirror * _kernels.graph_x(p.n, p.H, p.T, p.y0, float(ys[i]), tol)
    xs[k] = p.x1
    return (xs, ys)


# ---------------------------------------------------------------------------
# Piecewise generatrix curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PiecewiseCurve:
    """Ordered generatrix pieces traversed start to end.

    ``validate`` checks positional continuity at every junction and tangent
    continuity at all junctions not listed in ``corner_junctions`` (junction
    i joins pieces i and i+1).  Corners are legitimate where the generatrix
    meets a domain edge or the boundary of the candidate set turns along the
    domain wall; tangent-matching is a property of free-boundary junctions.
    """

    n: int
    pieces: tuple[Piece, ...]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise InvalidParamsError("a piecewise curve needs at least one piece")
        for p in self.pieces:
            if isinstance(p, DelaunayArc) and p.n != self.n:
                raise InvalidParamsError(
                    f"piece dimension {p.n} differs from curve dimension {self.n}"
                )

    @property
    def start(self) -> tuple[float, float]:
        return piece_start(self.pieces[0])

    @property
    def end(self) -> tuple[float, float]:
        return piece_end(self.pieces[-1])

    def arclen(self, tol: float = 1e-12) -> float:
        return sum(piece_arclen(p, tol) for p in self.pieces)

    def area(self, tol: float = 1e-12) -> float:
        """Total lateral area of the revolved curve."""
        return sum(piece_area(p, self.n, tol) for p in self.pieces)

    def signed_volume(self, tol: float = 1e-12) -> float:
        """Signed enclosed volume; positive when traversed with the enclosed
        region below-right (overall increasing x above the axis)."""
        return sum(piece_volume(p, self.n, tol) for p in self.pieces)

    def validate(
        self,
        pos_tol: float = 1e-9,
        ang_tol: float = 1e-6,
        corner_junctions: frozenset[int] | set[int] = frozenset(),
    ) -> None:
        """Raise InvalidParamsError on a broken or kinked junction.

        The angle tolerance must stay above ~1e-8: tangents at profile
        extrema are computed through sqrt(1 - cos^2 sigma), which turns
        rounding of cos(sigma) near +-1 into square-root-sized noise.
        Genuine kinks are orders of magnitude larger.
        """
        scale = 1.0 + max(abs(c) for p in self.pieces for c in (*piece_start(p), *piece_end(p)))
        for i in range(len(self.pieces) - 1):
            xe, ye = piece_end(self.pieces[i])
            xs, ys = piece_start(self.pieces[i + 1])
            gap = math.hypot(xs - xe, ys - ye)
            if gap > pos_tol * scale:
                raise InvalidParamsError(
                    f"junction {i} is broken: pieces end at {(xe, ye)} and start at "
                    f"{(xs, ys)} (gap {gap:.3e})"
                )
            if i in corner_junctions:
                continue
            te = piece_tangent_end(self.pieces[i])
            ts = piece_tangent_start(self.pieces[i + 1])
            mis = math.hypot(ts[0] - te[0], ts[1] - te[1])
            if mis > ang_tol:
                raise InvalidParamsError(
                    f"junction {i} is kinked: tangents {te} vs {ts} (mismatch {mis:.3e})"
                )

    def sample(self, per_piece: int = 64, tol: float = 1e-10) -> tuple[np.ndarray, np.ndarray]:
        """Concatenated samples of all pieces (shared junction points merged)."""
        xs: list[np.ndarray] = []
        ys: list[np.ndarray] = []
        for i, p in enumerate(self.pieces):
            px, py = sample_piece(p, per_piece, tol)
            if i > 0:
                px, py = px[1:], py[1:]
            xs.append(px)
            ys.append(py)
        return (np.concatenate(xs), np.concatenate(ys))

    def bounds_region(self, pos_tol: float = 1e-9) -> bool:
        """True when the curve encloses a region together with the axis:
        either closed, or with both endpoints on the axis."""
        (xs, ys), (xe, ye) = self.start, self.end
        scale = 1.0 + max(abs(xs), abs(ys), abs(xe), abs(ye))
        if math.hypot(xe - xs, ye - ys) <= pos_tol * scale:
            return True
        return abs(ys) <= pos_tol * scale and abs(ye) <= pos_tol * scale


def curve_area_volume(curve: PiecewiseCurve, tol: float = 1e-12) -> tuple[float, float]:
    """Total boundary area and enclosed volume of the solid of revolution.

    The curve must bound a region together with the rotation axis (closed, or
    with both endpoints on the axis); the volume is returned positive
    regardless of traversal direction.
    """
    if not curve.bounds_region():
        raise InvalidParamsError(
            f"curve from {curve.start} to {curve.end} does not bound a region"
        )
    vol = curve.signed_volume(tol)
    if vol == 0.0:
        raise InvalidParamsError("curve encloses zero volume")
    return (curve.area(tol), abs(vol))


def _piece_weighted(p: Piece, n: int, tol: float) -> tuple[float, float]:
    """(integral y^{n-2} ds, signed integral-over-region y^{n-2} dx dy) for one piece."""
    if isinstance(p, Segment):
        L = math.hypot(p.x1 - p.x0, p.y1 - p.y0)
        pw = L * _segment_moment(p.y0, p.y1, n - 2)
        vw = (p.x1 - p.x0) * _segment_moment(p.y0, p.y1, n - 1) / (n - 1)
        return (pw, vw)
    if isinstance(p, SphereArc):
        lo, hi = min(p.phi0, p.phi1), max(p.phi0, p.phi1)
        pw = p.r ** (n - 1) * _gk.adaptive(lambda t: np.sin(t) ** (n - 2), lo, hi, tol)
        vw = -(p.r**n / (n - 1)) * _gk.adaptive(lambda t: np.sin(t) ** n, p.phi0, p.phi1, tol)
        return (pw, vw)
    pw = abs(_kernels.graph_area(p.n, p.H, p.T, p.y0, p.y1, tol))
    vw = p.mirror * _kernels.graph_vol(p.n, p.H, p.T, p.y0, p.y1, tol) / (n - 1)
    return (pw, vw)


def weighted_functionals(curve: PiecewiseCurve, tol: float = 1e-12) -> tuple[float, float]:
    """Planar weighted perimeter and volume of the region the curve bounds:
    P_w = integral y^{n-2} ds over the curve, V_w = double integral y^{n-2}
    over the region.  They reproduce the revolved functionals through
    P = (n-1) omega_{n-1} P_w and V = (n-1) omega_{n-1} V_w.
    """
    if not curve.bounds_region():
        raise InvalidParamsError(
            f"curve from {curve.start} to {curve.end} does not bound a region"
        )
    pw = 0.0
    vw = 0.0
    for p in curve.pieces:
        a, b = _piece_weighted(p, curve.n, tol)
        pw += a
        vw += b
    return (pw, abs(vw))
