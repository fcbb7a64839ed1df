"""Validators that certify computed results against the structural facts
the candidate construction relies on.

The solver builds candidate sets whose free boundaries are constant-mean-
curvature pieces and trusts a handful of structural facts: on a convex
domain the optimal free boundary carries a nonpositive conserved quantity
(it consists of sphere and nodoid pieces only), a generatrix far enough
from the axis rules unduloid pieces out, and the planar rolling-ball
picture of optimal sets does not survive revolution.  Each validator here
recomputes the relevant quantity from the finished geometry - never from
the solver's internal bookkeeping - and returns a :class:`CertificateReport`
with the worst sampled residual and where it occurred.

All checks sample deterministic grids, so re-running one on the same
inputs reproduces the report exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np

from .delaunay import classify, cos_sigma
from .domains import DomainSpec, build_domain, inscribed_ball_radius, unit_ball_volume
from .errors import InvalidParamsError
from .numerics import CheegerResult
from .revolve import (
    DelaunayArc,
    PiecewiseCurve,
    Segment,
    SphereArc,
    curve_area_volume,
    piece_end,
    piece_start,
)

__all__ = [
    "CertificateReport",
    "t_sign_certificate",
    "height_criterion",
    "rolling_ball_check",
    "classification_certificate",
]

#: Default number of sampling intervals per generatrix piece.
SAMPLES_PER_PIECE = 2048

#: Free-boundary classes an optimal candidate on a convex domain may use.
_CONVEX_CLASSES = frozenset({"sphere", "nodoid"})

#: Classes observed on the nonconvex hourglass family (the neck admits
#: unduloid and cylinder middles, which is exactly what makes it a
#: counterexample to the convex classification).
_HOURGLASS_CLASSES = _CONVEX_CLASSES | frozenset({"unduloid", "cylinder"})


@dataclass(frozen=True)
class CertificateReport:
    """Outcome of one validator run.

    ``status`` is ``"pass"``, ``"fail"``, or ``"not-applicable"``.  When the
    check is applicable, ``status == "pass"`` exactly when ``max_residual``
    does not exceed ``threshold``; ``witness`` records the location and
    value of the worst violation (or the decisive quantities for scalar
    checks).
    """

    check: str
    status: str
    max_residual: float
    threshold: float
    witness: Mapping[str, Any]

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    @property
    def applicable(self) -> bool:
        return self.status != "not-applicable"

    def to_dict(self) -> dict[str, Any]:
        """JSON-ready representation (non-finite residuals become None)."""
        residual = self.max_residual if math.isfinite(self.max_residual) else None
        return {
            "check": self.check,
            "status": self.status,
            "passed": self.passed,
            "max_residual": residual,
            "threshold": self.threshold,
            "witness": dict(self.witness),
        }


def _verdict(
    check: str, residual: float, threshold: float, witness: Mapping[str, Any]
) -> CertificateReport:
    status = "pass" if residual <= threshold else "fail"
    return CertificateReport(check, status, residual, threshold, dict(witness))


def _not_applicable(
    check: str, threshold: float, witness: Mapping[str, Any]
) -> CertificateReport:
    return CertificateReport(check, "not-applicable", math.nan, threshold, dict(witness))


# ---------------------------------------------------------------------------
# Conserved-quantity sign certificate
# ---------------------------------------------------------------------------


def _left_to_right_t_samples(
    piece, n: int, H: float, k: int
) -> tuple[np.ndarray, np.ndarray]:
    """Ordinates and tangent cosines along a piece, traversed left to right.

    The conserved quantity's sign convention assumes the generatrix is
    traversed with increasing abscissa (the enclosed region below); pieces
    assembled right to left are flipped by their net extent.
    """
    if isinstance(piece, Segment):
        t = np.linspace(0.0, 1.0, k + 1)
        ys = piece.y0 + t * (piece.y1 - piece.y0)
        length = math.hypot(piece.x1 - piece.x0, piece.y1 - piece.y0)
        tx = (piece.x1 - piece.x0) / length
        if piece.x1 < piece.x0:
            tx = -tx
        return ys, np.full(k + 1, tx)
    if isinstance(piece, SphereArc):
        phi = np.linspace(piece.phi0, piece.phi1, k + 1)
        d = 1.0 if piece.phi1 > piece.phi0 else -1.0
        ys = piece.r * np.sin(phi)
        cs = -d * np.sin(phi)
        if math.cos(piece.phi1) < math.cos(piece.phi0):
            cs = -cs
        return ys, cs
    # Delaunay branch: cosine-spaced ordinates keep the sampling dense near
    # profile extrema, where the tangent turns fastest.
    u = 0.5 * (1.0 - np.cos(np.linspace(0.0, math.pi, k + 1)))
    ys = piece.y0 + u * (piece.y1 - piece.y0)
    d = 1.0 if piece.y1 > piece.y0 else -1.0
    cs = np.empty_like(ys)
    for i, y in enumerate(ys):
        if y <= 0.0:
            cs[i] = 0.0  # the y^{n-2} weight kills the term at the axis
        else:
            cs[i] = max(-1.0, min(1.0, cos_sigma(piece.params, float(y))))
    cs *= piece.mirror * d
    if piece.x1 < piece.x0:
        cs = -cs
    return ys, cs


def _piece_abscissa_at(piece, y: float, fallback: float) -> float:
    """Abscissa of the piece point at ordinate ``y`` (for witness data)."""
    if isinstance(piece, DelaunayArc):
        from . import _kernels

        try:
            return piece.x0 + piece.mirror * _kernels.graph_x(
                piece.n, piece.H, piece.T, piece.y0, y
            )
        except Exception:
            return fallback
    return fallback


def t_sign_certificate(
    curve: PiecewiseCurve,
    h: float,
    n: int,
    *,
    free_pieces: Sequence[int] | None = None,
    samples_per_piece: int = SAMPLES_PER_PIECE,
) -> CertificateReport:
    """Certify that ``y^{n-2} cos(sigma) - (h/(n-1)) y^{n-1}`` stays
    nonpositive along the free pieces of a candidate generatrix.

    The quantity is conserved along every constant-mean-curvature profile
    of curvature ``h/(n-1)``; sphere and nodoid pieces carry a nonpositive
    value, unduloid and cylinder pieces a positive one.  On a convex domain
    the optimal set uses sphere and nodoid pieces only, so its certificate
    passes; a failing certificate pinpoints where a candidate's free
    boundary leaves that regime (the nonconvex hourglass family does so on
    its neck).

    ``free_pieces`` selects the generatrix pieces to sample; by default all
    constant-curvature pieces (everything that is not a straight segment)
    are treated as free boundary.  An empty selection - a set whose whole
    boundary lies on the domain walls - passes vacuously.
    """
    if not isinstance(curve, PiecewiseCurve):
        raise InvalidParamsError("t_sign_certificate needs a PiecewiseCurve")
    if not (isinstance(h, (int, float)) and math.isfinite(h) and h > 0.0):
        raise InvalidParamsError(f"h must be a positive number, got {h!r}")
    if not (isinstance(n, int) and n >= 3):
        raise InvalidParamsError(f"dimension must be an integer >= 3, got {n!r}")
    if samples_per_piece < 2:
        raise InvalidParamsError("need at least two sampling intervals per piece")
    if free_pieces is None:
        indices = tuple(
            i for i, p in enumerate(curve.pieces) if not isinstance(p, Segment)
        )
    else:
        indices = tuple(int(i) for i in free_pieces)
        for i in indices:
            if not 0 <= i < len(curve.pieces):
                raise InvalidParamsError(
                    f"free piece index {i} outside the {len(curve.pieces)}-piece curve"
                )

    threshold = 1e-8
    H = h / (n - 1)
    witness: dict[str, Any] = {
        "pieces_sampled": len(indices),
        "samples_per_piece": samples_per_piece,
        "curvature": H,
    }
    if not indices:
        witness["vacuous"] = True
        return _verdict("t-sign", 0.0, threshold, witness)

    worst = -math.inf
    worst_piece = indices[0]
    worst_y = 0.0
    for i in indices:
        piece = curve.pieces[i]
        ys, cs = _left_to_right_t_samples(piece, n, H, samples_per_piece)
        values = ys ** (n - 2) * cs - H * ys ** (n - 1)
        j = int(np.argmax(values))
        if values[j] > worst:
            worst = float(values[j])
            worst_piece = i
            worst_y = float(ys[j])
    piece = curve.pieces[worst_piece]
    fallback = 0.5 * (piece_start(piece)[0] + piece_end(piece)[0])
    witness.update(
        worst_piece=worst_piece,
        worst_y=worst_y,
        worst_x=_piece_abscissa_at(piece, worst_y, fallback),
    )
    return _verdict("t-sign", worst, threshold, witness)


# ---------------------------------------------------------------------------
# Generatrix-height criterion
# ---------------------------------------------------------------------------


def height_criterion(
    spec: DomainSpec,
    h: float,
    *,
    samples_per_piece: int = SAMPLES_PER_PIECE,
) -> CertificateReport:
    """Check whether the domain's generatrix stays high enough above the
    axis to rule out unduloid free-boundary pieces.

    Any unduloid of curvature ``h/(n-1)`` stays strictly below the ordinate
    ``(n-1)/h`` (the radius of the sphere of equal curvature), so a domain
    whose generatrix never descends below that ordinate admits no unduloid
    piece in its optimal free boundary.  The report also evaluates the
    volume-based sufficient condition ``min height >= ((n-1)/n)
    (|domain| / omega_n)^{1/n}``, which implies the first through the ball
    lower bound on ``h`` and needs no solve to state.

    Domains whose generatrix touches the axis (all the solid built-in
    families) are reported not-applicable.
    """
    if not isinstance(spec, DomainSpec):
        raise InvalidParamsError("height_criterion needs a DomainSpec")
    if not (isinstance(h, (int, float)) and math.isfinite(h) and h > 0.0):
        raise InvalidParamsError(f"h must be a positive number, got {h!r}")
    xs, ys = spec.generatrix.sample(per_piece=samples_per_piece)
    min_height = float(np.min(ys))
    scale = 1.0 + float(np.max(np.abs(xs)) + np.max(np.abs(ys)))
    threshold = 0.0
    if min_height <= 1e-12 * scale:
        return _not_applicable(
            "height-criterion",
            threshold,
            {"min_height": min_height, "reason": "generatrix touches the axis"},
        )
    n = spec.n
    required = (n - 1) / h
    _, volume = curve_area_volume(spec.generatrix)
    sufficient = (n - 1) / n * (volume / unit_ball_volume(n)) ** (1.0 / n)
    witness = {
        "min_height": min_height,
        "required_height": required,
        "volume_sufficient_height": sufficient,
        "volume_condition_holds": bool(min_height >= sufficient),
    }
    return _verdict("height-criterion", required - min_height, threshold, witness)


# ---------------------------------------------------------------------------
# Rolling-ball comparison for cones
# ---------------------------------------------------------------------------


def rolling_ball_check(l: float, theta: float, h: float) -> CertificateReport:
    """Compare the ball of radius ``2/h`` against the largest ball inscribed
    in the three-dimensional cone with slant length ``l`` and half-opening
    angle ``theta``.

    For planar convex domains the optimal set is characterized by rolling a
    disk of radius ``1/h`` inside the domain; the revolved analogue would
    roll a ball of radius ``2/h``.  The check passes when that ball fits
    (``2/h <= inscribed radius``) and fails when it cannot - which happens
    for opening angles close to a right angle, even though a spherical cap
    of that very radius is part of the optimal free boundary.  The witness
    also records the analytic sufficient condition for the failure, which
    compares the whole-domain perimeter/volume bound ``2 l sin(theta) /
    (3 (1 + cos(theta)))`` against the inscribed radius and requires no
    solve.
    """
    if not (isinstance(l, (int, float)) and math.isfinite(l) and l > 0.0):
        raise InvalidParamsError(f"l must be a positive number, got {l!r}")
    if not (0.0 < theta < math.pi / 2):
        raise InvalidParamsError(
            f"theta must lie strictly between 0 and pi/2, got {theta!r}"
        )
    if not (isinstance(h, (int, float)) and math.isfinite(h) and h > 0.0):
        raise InvalidParamsError(f"h must be a positive number, got {h!r}")
    spec = build_domain("cone", 3, l=float(l), theta=float(theta))
    inscribed = inscribed_ball_radius(spec)
    ball = 2.0 / h
    bound = 2.0 * l * math.sin(theta) / (3.0 * (1.0 + math.cos(theta)))
    witness = {
        "ball_radius": ball,
        "inscribed_ball_radius": inscribed,
        "wall_ratio_ball_radius": bound,
        "counterexample_condition_holds": bool(bound > inscribed),
    }
    return _verdict("rolling-ball", ball - inscribed, 0.0, witness)


# ---------------------------------------------------------------------------
# Free-piece classification certificate
# ---------------------------------------------------------------------------


def _piece_class(piece, scale: float) -> str:
    if isinstance(piece, SphereArc):
        return "sphere"
    if isinstance(piece, DelaunayArc):
        return classify(piece.params).value
    if abs(piece.y1 - piece.y0) <= 1e-12 * scale and piece.y0 > 0.0:
        return "cylinder"  # horizontal free segment = degenerate profile
    return "segment"


def classification_certificate(result: CheegerResult) -> CertificateReport:
    """Certify the profile classes appearing on a solved result's free
    boundary.

    On the convex families (cylinder, cone, double-cone) every free piece
    must be part of a sphere or a nodoid; any other class fails the
    certificate.  On the hourglass family unduloid and cylinder middles are
    legitimate, so the certificate there records the observed classes and
    fails only on classes no candidate construction produces.
    """
    if not isinstance(result, CheegerResult):
        raise InvalidParamsError("classification_certificate needs a CheegerResult")
    cand = result.candidate
    family = cand.domain.family
    allowed = _HOURGLASS_CLASSES if family == "hourglass" else _CONVEX_CLASSES
    pieces = cand.generatrix.pieces
    scale = 1.0 + max(
        abs(c) for p in pieces for c in (*piece_start(p), *piece_end(p))
    )
    classes = [_piece_class(pieces[i], scale) for i in cand.free_pieces]
    violations = [
        int(i) for i, cls in zip(cand.free_pieces, classes) if cls not in allowed
    ]
    witness = {
        "family": family,
        "allowed_classes": sorted(allowed),
        "classes": classes,
        "violations": violations,
    }
    return _verdict("classification", float(len(violations)), 0.0, witness)
