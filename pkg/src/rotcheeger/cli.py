"""Command-line interface.

Subcommands
-----------

``classify``
    Name the profile class of a constant-mean-curvature generating curve
    from its dimension, curvature, and first-integral value.
``profile``
    Emit one period of such a profile as a JSON polyline.
``cheeger <family> ...``
    Solve a domain and print the result report (JSON by default, CSV with
    ``--format csv``).
``tables``
    Recompute the whole bundled table of published reference optima and
    report deltas.
``sweep``
    Walk the hourglass neck-height grid and report structure transitions.
``plot``
    Render a solved domain (or a family of profiles) as a standalone SVG.
``check``
    Solve a domain and print every applicable certificate in full.

Exit codes: 0 success, 1 usage error, 2 inadmissible or invalid domain
parameters (and numerical failures), 3 I/O error.

The environment variable ``CHEEGER_TOL`` overrides the default tolerance
bundle; a per-command ``--tol`` flag overrides both.  Angles are accepted
in radians, with ``--theta-deg`` and ``--theta-arcsin`` as alternatives.
All output is deterministic for a fixed invocation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from .candidates import (
    cone_candidate,
    cylinder_candidate,
    double_cone_candidate,
    hourglass_candidates,
)
from .checks import (
    classification_certificate,
    height_criterion,
    rolling_ball_check,
    t_sign_certificate,
)
from .delaunay import (
    DelaunayClass,
    DelaunayParams,
    classify,
    half_period,
    profile_extrema,
    t_max,
    x_of_y,
)
from .domains import DomainSpec, build_domain
from .errors import InadmissibleError, InvalidParamsError, NumericsError
from .numerics import CheegerResult, SolverConfig, cheeger, hourglass_sweep

__all__ = [
    "RunConfig",
    "UsageError",
    "build_report",
    "recompute_from_report",
    "render_domain_svg",
    "render_profile_family_svg",
    "reference_tables",
    "main",
]


class UsageError(Exception):
    """Bad command line (unknown flags, missing arguments, empty ranges)."""


@dataclass(frozen=True)
class RunConfig:
    """Validated per-invocation settings shared by the command handlers."""

    command: str
    family: str | None
    n: int
    parameters: dict[str, float]
    solver: SolverConfig
    output_format: str
    plot_path: str | None = None
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.n < 3:
            raise UsageError(f"dimension must be at least 3, got {self.n}")
        if self.output_format not in ("json", "csv"):
            raise UsageError(f"unknown output format {self.output_format!r}")
        if self.jobs < 1:
            raise UsageError(f"jobs must be at least 1, got {self.jobs}")


# ---------------------------------------------------------------------------
# Reference tables (published five-digit optima, r = 1 for all cylinders)
# ---------------------------------------------------------------------------

_CYLINDER_REFERENCE: tuple[tuple[float, int, float, float], ...] = (
    # (l, n, reference H, reference h)
    (1.0, 3, 1.86237, 3.72474),
    (1.0, 4, 1.53976, 4.61928),
    (1.0, 5, 1.38214, 5.52854),
    (1.0, 10, 1.13465, 10.2118),
    (1.0, 30, 1.02474, 29.7175),
    (2.0, 3, 1.40106, 2.80212),
    (2.0, 4, 1.24549, 3.73646),
    (2.0, 5, 1.17083, 4.68334),
    (2.0, 10, 1.05746, 9.51714),
    (2.0, 30, 1.01027, 29.2978),
    (3.0, 3, 1.25659, 2.51318),
    (3.0, 4, 1.15544, 3.46631),
    (3.0, 5, 1.10738, 4.42954),
    (3.0, 10, 1.03555, 9.31991),
    (3.0, 30, 1.00634, 29.184),
)

_DOUBLE_CONE_REFERENCE: tuple[tuple[float, float, float, float], ...] = (
    # (l, r, theta, reference h), n = 3
    (9.0 / 5.0, 16.0 / 5.0, math.asin(4.0 / 5.0), 1.6502),
    (1.0, 3.0, math.pi / 3.0, 2.22333),
    (1.0, 1.0, 2.0 * math.pi / 5.0, 2.38303),
    (1.0, 1.0, math.pi / 3.0, 3.00582),
    (1.0, 1.0, math.pi / 4.0, 4.00593),
    (1.0, 1.0, math.pi / 6.0, 5.75003),
)

_CONE_REFERENCE: tuple[tuple[float, float, float], ...] = (
    # (l, theta, reference h), n = 3
    (4.0, math.asin(3.0 / 5.0), 1.69452),
    (3.0, math.asin(4.0 / 5.0), 1.71916),
    (1.0, math.pi / 3.0, 4.6575),
    (1.0, math.pi / 4.0, 5.86018),
    (1.0, math.pi / 6.0, 7.85898),
)


def reference_tables() -> list[dict[str, Any]]:
    """The bundled reference entries as a list of row descriptions."""
    rows: list[dict[str, Any]] = []
    for l, n, H_ref, h_ref in _CYLINDER_REFERENCE:
        rows.append(
            {
                "family": "cylinder",
                "n": n,
                "parameters": {"l": l, "r": 1.0},
                "reference_H": H_ref,
                "reference_h": h_ref,
            }
        )
    for l, r, theta, h_ref in _DOUBLE_CONE_REFERENCE:
        rows.append(
            {
                "family": "double-cone",
                "n": 3,
                "parameters": {"l": l, "r": r, "theta": theta},
                "reference_H": None,
                "reference_h": h_ref,
            }
        )
    for l, theta, h_ref in _CONE_REFERENCE:
        rows.append(
            {
                "family": "cone",
                "n": 3,
                "parameters": {"l": l, "theta": theta},
                "reference_H": None,
                "reference_h": h_ref,
            }
        )
    return rows


# ---------------------------------------------------------------------------
# Result reports
# ---------------------------------------------------------------------------


def _certificates_of(result: CheegerResult) -> dict[str, Any]:
    cand = result.candidate
    reports = {
        "t-sign": t_sign_certificate(
            cand.generatrix, result.h, result.domain.n, free_pieces=cand.free_pieces
        ),
        "classification": classification_certificate(result),
        "height-criterion": height_criterion(result.domain, result.h),
    }
    if result.domain.family == "cone":
        p = result.domain.parameters
        reports["rolling-ball"] = rolling_ball_check(p["l"], p["theta"], result.h)
    return reports


def _certificate_pass(result: CheegerResult, reports: Mapping[str, Any]) -> bool:
    """Overall verdict: classification must pass everywhere; the sign
    certificate must pass on convex families (on the hourglass it fails by
    design whenever the optimal neck piece is an unduloid or cylinder)."""
    ok = reports["classification"].passed
    if result.domain.family != "hourglass":
        ok = ok and reports["t-sign"].passed
    return ok


def build_report(result: CheegerResult, certificates: str = "summary") -> dict[str, Any]:
    """JSON-ready report of a solved domain.

    ``certificates`` selects how much validator output is embedded:
    ``"summary"`` (statuses only), ``"full"`` (complete reports), or
    ``"none"``.
    """
    if certificates not in ("summary", "full", "none"):
        raise InvalidParamsError(f"unknown certificate detail {certificates!r}")
    cand = result.candidate
    report: dict[str, Any] = {
        "domain": {
            "family": result.domain.family,
            "n": result.domain.n,
            "parameters": dict(result.domain.parameters),
        },
        "h": result.h,
        "H_opt": result.H_opt,
        "structure": cand.structure,
        "components": cand.components,
        "glue": dict(cand.glue),
        "breakdown": {
            "areas": dict(cand.breakdown.areas),
            "volumes": dict(cand.breakdown.volumes),
            "perimeter": cand.breakdown.perimeter,
            "volume": cand.breakdown.volume,
        },
        "diagnostics": dict(result.diagnostics),
    }
    if certificates != "none":
        reports = _certificates_of(result)
        report["certificate_pass"] = _certificate_pass(result, reports)
        if certificates == "full":
            report["certificates"] = {k: r.to_dict() for k, r in reports.items()}
        else:
            report["certificates"] = {k: r.status for k, r in reports.items()}
    return report


def recompute_from_report(report: Mapping[str, Any] | str) -> float:
    """Rebuild the winning candidate from a report's recorded curvature and
    gluing data and return its perimeter/volume ratio.

    This is the round-trip guarantee for serialized results: the returned
    ratio reproduces the report's ``h`` within 1e-9.
    """
    doc: Mapping[str, Any] = json.loads(report) if isinstance(report, str) else report
    dom = doc["domain"]
    family = dom["family"]
    n = int(dom["n"])
    p = {k: float(v) for k, v in dom["parameters"].items()}
    H = float(doc["H_opt"])
    glue = doc.get("glue", {})
    if family == "cylinder":
        cand = cylinder_candidate(n, p["l"], p["r"], H)
    elif family == "cone":
        cand = cone_candidate(p["l"], p["theta"], H)
    elif family == "double-cone":
        root = int(round(float(glue.get("root_index", 0.0))))
        cand = double_cone_candidate(p["l"], p["r"], p["theta"], H, root_index=root)
    elif family == "hourglass":
        structure = str(doc["structure"])
        case = structure.split("/", 1)[0].removeprefix("hourglass-")
        matches = [
            c
            for c in hourglass_candidates(p["a"], p["b"], p["c"], p["d"], H, cases=(case,))
            if c.structure == structure
        ]
        if not matches:
            raise InadmissibleError(
                f"no candidate with structure {structure!r} exists at H = {H!r}"
            )
        cand = min(matches, key=lambda c: c.breakdown.ratio)
    else:
        raise InvalidParamsError(f"unknown family {family!r} in report")
    return cand.breakdown.ratio


# ---------------------------------------------------------------------------
# SVG rendering
# ---------------------------------------------------------------------------


def _svg_path(xs: np.ndarray, ys: np.ndarray, close: bool) -> str:
    coords = " L ".join(f"{x:.6f} {y:.6f}" for x, y in zip(xs, ys))
    return f"M {coords} Z" if close else f"M {coords}"


def _svg_document(
    body: list[str],
    x_lo: float,
    x_hi: float,
    y_lo: float,
    y_hi: float,
    scale: float,
    label: str,
) -> str:
    pad = 0.08 * max(x_hi - x_lo, y_hi - y_lo, 1e-9)
    x_lo, x_hi = x_lo - pad, x_hi + pad
    y_lo, y_hi = y_lo - pad, y_hi + pad
    width = (x_hi - x_lo) * scale
    height = (y_hi - y_lo) * scale + 28.0
    tx = -x_lo * scale
    ty = y_hi * scale + 28.0  # y axis points up inside the flipped group
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">',
        f'<text x="8" y="18" font-family="sans-serif" font-size="13">{label}</text>',
        f'<g transform="translate({tx:.3f} {ty:.3f}) scale({scale:.6g} -{scale:.6g})">',
        *body,
        "</g>",
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def render_domain_svg(result: CheegerResult, scale: float = 120.0) -> str:
    """Standalone SVG of a solved domain: the domain generatrix outlined in
    gray, the optimal set's generating region as the single filled path
    (both components when the optimum is disconnected), and the rotation
    axis.  Path coordinates are in domain units; the group transform maps
    them to pixels with the y axis pointing up."""
    if scale <= 0.0 or not math.isfinite(scale):
        raise InvalidParamsError(f"scale must be a positive number, got {scale!r}")
    spec = result.domain
    dom_x, dom_y = spec.generatrix.sample(per_piece=128)
    cand = result.candidate
    cx, cy = cand.generatrix.sample(per_piece=128)
    sw = 1.6 / scale
    region = _svg_path(cx, cy, close=True)
    if cand.components == 2:
        region += " " + _svg_path(-cx[::-1], cy[::-1], close=True)
    x_lo = float(min(dom_x.min(), cx.min(), -cx.max() if cand.components == 2 else cx.min()))
    x_hi = float(max(dom_x.max(), cx.max()))
    y_hi = float(max(dom_y.max(), cy.max()))
    body = [
        f'<line x1="{x_lo:.6f}" y1="0" x2="{x_hi:.6f}" y2="0" '
        f'stroke="#888888" stroke-width="{sw / 2:.6g}" stroke-dasharray="{6 * sw:.6g} {4 * sw:.6g}"/>',
        f'<path d="{_svg_path(dom_x, dom_y, close=False)}" fill="none" '
        f'stroke="#9a9a9a" stroke-width="{sw:.6g}"/>',
        f'<path d="{region}" fill="#6ba3d6" fill-opacity="0.55" '
        f'stroke="#24527a" stroke-width="{sw:.6g}"/>',
    ]
    p = ", ".join(f"{k}={v:.6g}" for k, v in sorted(spec.parameters.items()))
    label = f"{spec.family} ({p}), n={spec.n}: h = {result.h:.6f}"
    return _svg_document(body, x_lo, x_hi, 0.0, y_hi, scale, label)


def _profile_period(n: int, H: float, T: float, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """One period (or the full dome) of a profile as a polyline, starting
    at abscissa 0."""
    params = DelaunayParams(n, H, T)
    cls = classify(params)
    if cls is DelaunayClass.SPHERE:
        t = np.linspace(0.0, math.pi, samples + 1)
        return (-np.cos(t) / H, np.sin(t) / H)
    y_min, y_max = profile_extrema(params)
    if cls is DelaunayClass.CYLINDER:
        return (np.linspace(0.0, 2.0 / H, samples + 1), np.full(samples + 1, y_min))
    if cls not in (DelaunayClass.UNDULOID, DelaunayClass.NODOID):
        raise InvalidParamsError(f"no periodic profile for class {cls.value}")
    u = 0.5 * (1.0 - np.cos(np.linspace(0.0, math.pi, samples + 1)))
    ys = y_min + u * (y_max - y_min)
    xs = np.empty_like(ys)
    xs[0] = 0.0
    for i in range(1, len(ys)):
        xs[i] = x_of_y(params, y_min, 0.0, 1, float(ys[i]))
    # the falling half-period mirrors the rising one about the crest
    xs_down = 2.0 * xs[-1] - xs[-2::-1]
    ys_down = ys[-2::-1]
    return (np.concatenate([xs, xs_down]), np.concatenate([ys, ys_down]))


def render_profile_family_svg(
    n: int,
    H: float,
    ts: Sequence[float],
    scale: float = 120.0,
    samples: int = 96,
) -> str:
    """SVG of one period of each requested profile (one polyline per
    first-integral value) over the rotation axis."""
    if scale <= 0.0 or not math.isfinite(scale):
        raise InvalidParamsError(f"scale must be a positive number, got {scale!r}")
    if not ts:
        raise InvalidParamsError("need at least one first-integral value")
    colors = ("#24527a", "#a23b3b", "#2e7d4f", "#7a5195", "#b8860b", "#20818a")
    polys = [_profile_period(n, H, float(t), samples) for t in ts]
    x_lo = float(min(xs.min() for xs, _ in polys))
    x_hi = float(max(xs.max() for xs, _ in polys))
    y_hi = float(max(ys.max() for _, ys in polys))
    sw = 1.6 / scale
    body = [
        f'<line x1="{x_lo:.6f}" y1="0" x2="{x_hi:.6f}" y2="0" '
        f'stroke="#888888" stroke-width="{sw / 2:.6g}" stroke-dasharray="{6 * sw:.6g} {4 * sw:.6g}"/>'
    ]
    for i, ((xs, ys), t) in enumerate(zip(polys, ts)):
        pts = " ".join(f"{x:.6f},{y:.6f}" for x, y in zip(xs, ys))
        body.append(
            f'<polyline points="{pts}" fill="none" '
            f'stroke="{colors[i % len(colors)]}" stroke-width="{sw:.6g}"/>'
        )
    label = f"profiles n={n}, curvature={H:.6g}, first integrals: " + ", ".join(
        f"{float(t):.6g}" for t in ts
    )
    return _svg_document(body, x_lo, x_hi, 0.0, y_hi, scale, label)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


_FAMILY_FLAGS = {
    "cylinder": ("l", "r"),
    "cone": ("l",),
    "double-cone": ("l", "r"),
    "hourglass": ("a", "b", "c", "d"),
}
_THETA_FAMILIES = ("cone", "double-cone")


def _add_theta_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--theta", type=float, help="half-opening angle in radians")
    group.add_argument("--theta-deg", type=float, help="half-opening angle in degrees")
    group.add_argument(
        "--theta-arcsin",
        type=float,
        metavar="RATIO",
        help="half-opening angle as arcsin(RATIO)",
    )


def _theta_of(args: argparse.Namespace) -> float:
    if args.theta is not None:
        return args.theta
    if args.theta_deg is not None:
        return math.radians(args.theta_deg)
    if not -1.0 <= args.theta_arcsin <= 1.0:
        raise UsageError(f"--theta-arcsin ratio must lie in [-1, 1], got {args.theta_arcsin}")
    return math.asin(args.theta_arcsin)


def _add_family_parsers(
    sub: argparse._SubParsersAction, handler: Callable, with_format: bool
) -> None:
    for family, flags in _FAMILY_FLAGS.items():
        p = sub.add_parser(family, help=f"{family} domain")
        for flag in flags:
            p.add_argument(f"--{flag}", type=float, required=True)
        if family in _THETA_FAMILIES:
            _add_theta_flags(p)
        p.add_argument(
            "--n",
            type=int,
            default=3,
            help="ambient dimension (3 unless the family supports more)",
        )
        p.add_argument("--tol", type=float, default=None, help="optimization tolerance")
        if with_format:
            p.add_argument("--format", choices=("json", "csv"), default="json")
        p.set_defaults(handler=handler, family=family)


def _domain_of(args: argparse.Namespace) -> DomainSpec:
    params = {flag: getattr(args, flag) for flag in _FAMILY_FLAGS[args.family]}
    if args.family in _THETA_FAMILIES:
        params["theta"] = _theta_of(args)
    return build_domain(args.family, args.n, **params)


def _solver_of(args: argparse.Namespace, prescan: int | None = None) -> SolverConfig:
    tol = getattr(args, "tol", None)
    if tol is None:
        env = os.environ.get("CHEEGER_TOL")
        if env is not None:
            try:
                tol = float(env)
            except ValueError as exc:
                raise UsageError(f"CHEEGER_TOL must be a number, got {env!r}") from exc
    if tol is None:
        cfg = SolverConfig()
    else:
        if not (tol > 0.0 and math.isfinite(tol)):
            raise UsageError(f"tolerance must be positive, got {tol!r}")
        cfg = SolverConfig.from_tolerance(tol)
    if prescan is not None:
        cfg = SolverConfig(
            quad_tol=cfg.quad_tol, root_tol=cfg.root_tol, opt_tol=cfg.opt_tol, prescan=prescan
        )
    return cfg


def _run_config(args: argparse.Namespace, **over: Any) -> RunConfig:
    spec_params: dict[str, float] = over.pop("parameters", {})
    return RunConfig(
        command=args.command,
        family=getattr(args, "family", None),
        n=int(getattr(args, "n", 3)),
        parameters=spec_params,
        solver=over.pop("solver", SolverConfig()),
        output_format=getattr(args, "format", "json"),
        plot_path=getattr(args, "output", None),
        jobs=int(getattr(args, "jobs", 1)),
        **over,
    )


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _emit_json(doc: Any) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _params_cell(parameters: Mapping[str, float]) -> str:
    return ";".join(f"{k}={v:.12g}" for k, v in sorted(parameters.items()))


_CSV_HEADER = "family,params,n,H_opt,h,structure,certificate_pass"


def _result_csv_row(report: Mapping[str, Any]) -> str:
    dom = report["domain"]
    return ",".join(
        (
            dom["family"],
            _params_cell(dom["parameters"]),
            str(dom["n"]),
            f"{report['H_opt']:.12g}",
            f"{report['h']:.12g}",
            report["structure"],
            str(report["certificate_pass"]).lower(),
        )
    )


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------


def _cmd_classify(args: argparse.Namespace) -> int:
    params = DelaunayParams(args.n, args.curvature, args.first_integral)
    cls = classify(params)
    y_min, y_max = profile_extrema(params)
    doc: dict[str, Any] = {
        "n": args.n,
        "curvature": args.curvature,
        "first_integral": args.first_integral,
        "class": cls.value,
        "first_integral_max": t_max(args.n, args.curvature),
        "y_min": y_min,
        "y_max": y_max if math.isfinite(y_max) else None,
    }
    if cls in (DelaunayClass.UNDULOID, DelaunayClass.NODOID):
        doc["half_period_arclen"] = half_period(params)
    _emit_json(doc)
    return 0


def _cmd_profile(args: argparse.Namespace) -> int:
    params = DelaunayParams(args.n, args.curvature, args.first_integral)
    cls = classify(params)
    xs, ys = _profile_period(args.n, args.curvature, args.first_integral, args.samples)
    y_min, y_max = profile_extrema(params)
    _emit_json(
        {
            "n": args.n,
            "curvature": args.curvature,
            "first_integral": args.first_integral,
            "class": cls.value,
            "y_min": y_min,
            "y_max": y_max,
            "x": [float(v) for v in xs],
            "y": [float(v) for v in ys],
        }
    )
    return 0


def _cmd_cheeger(args: argparse.Namespace) -> int:
    spec = _domain_of(args)
    cfg = _run_config(args, parameters=dict(spec.parameters), solver=_solver_of(args))
    result = cheeger(spec, cfg.solver)
    report = build_report(result, certificates="summary")
    if cfg.output_format == "csv":
        print(_CSV_HEADER)
        print(_result_csv_row(report))
    else:
        _emit_json(report)
    return 0


def _cmd_tables(args: argparse.Namespace) -> int:
    cfg = _run_config(args, solver=_solver_of(args))
    rows = []
    for entry in reference_tables():
        spec = build_domain(entry["family"], entry["n"], **entry["parameters"])
        result = cheeger(spec, cfg.solver)
        report = build_report(result, certificates="summary")
        h_ref = entry["reference_h"]
        rows.append(
            {
                **report,
                "reference_H": entry["reference_H"],
                "reference_h": h_ref,
                "rel_error": abs(result.h - h_ref) / h_ref,
            }
        )
    if cfg.output_format == "json":
        _emit_json(
            {
                "entries": [
                    {
                        "domain": r["domain"],
                        "H_opt": r["H_opt"],
                        "h": r["h"],
                        "reference_H": r["reference_H"],
                        "reference_h": r["reference_h"],
                        "rel_error": r["rel_error"],
                        "structure": r["structure"],
                        "certificate_pass": r["certificate_pass"],
                    }
                    for r in rows
                ]
            }
        )
    else:
        print(
            "family,params,n,H_opt,h,reference_H,reference_h,rel_error,"
            "structure,certificate_pass"
        )
        for r in rows:
            dom = r["domain"]
            ref_H = "" if r["reference_H"] is None else f"{r['reference_H']:.12g}"
            print(
                ",".join(
                    (
                        dom["family"],
                        _params_cell(dom["parameters"]),
                        str(dom["n"]),
                        f"{r['H_opt']:.12g}",
                        f"{r['h']:.12g}",
                        ref_H,
                        f"{r['reference_h']:.12g}",
                        f"{r['rel_error']:.3e}",
                        r["structure"],
                        str(r["certificate_pass"]).lower(),
                    )
                )
            )
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    if not args.d_min < args.d_max:
        raise UsageError(
            f"empty neck range: --d-min {args.d_min} is not below --d-max {args.d_max}"
        )
    cfg = _run_config(args, solver=_solver_of(args, prescan=args.prescan))
    sweep = hourglass_sweep(
        args.a,
        args.b,
        args.c,
        (args.d_min, args.d_max),
        step=args.step,
        crit_tol=args.crit_tol,
        config=cfg.solver,
    )
    doc = {
        "a": sweep.a,
        "b": sweep.b,
        "c": sweep.c,
        "d_range": [args.d_min, args.d_max],
        "step": args.step,
        "grid": [
            {"d": d, "h": h, "structure": tag, "middle_class": mid}
            for d, h, tag, mid in zip(sweep.grid, sweep.h, sweep.tags, sweep.middle_classes)
        ],
        "criticals": [
            {
                "value": c.value,
                "bracket": list(c.bracket),
                "before": c.before,
                "after": c.after,
            }
            for c in sweep.criticals
        ],
    }
    if args.csv is not None:
        lines = ["d,h,structure,middle_class"]
        lines += [
            f"{row['d']:.12g},{row['h']:.12g},{row['structure']},{row['middle_class']}"
            for row in doc["grid"]
        ]
        _write_text(args.csv, "\n".join(lines) + "\n")
    _emit_json(doc)
    return 0


def _cmd_plot(args: argparse.Namespace) -> int:
    if args.family == "delaunay":
        try:
            ts = [float(tok) for tok in args.first_integral.split(",") if tok.strip()]
        except ValueError as exc:
            raise UsageError(
                f"--first-integral must be a comma-separated number list: {exc}"
            ) from exc
        svg = render_profile_family_svg(args.n, args.curvature, ts, scale=args.scale)
    else:
        spec = _domain_of(args)
        result = cheeger(spec, _solver_of(args))
        svg = render_domain_svg(result, scale=args.scale)
    _write_text(args.output, svg)
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    spec = _domain_of(args)
    result = cheeger(spec, _solver_of(args))
    _emit_json(build_report(result, certificates="full"))
    return 0


# ---------------------------------------------------------------------------
# Parser assembly and entry point
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="cheeger",
        description="Cheeger constants and explicit optimal sets of "
        "rotationally invariant domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="classify a profile from (n, curvature, first integral)")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--curvature", type=float, required=True)
    p.add_argument("--first-integral", type=float, required=True)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("profile", help="emit one profile period as a JSON polyline")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--curvature", type=float, required=True)
    p.add_argument("--first-integral", type=float, required=True)
    p.add_argument("--samples", type=int, default=96)
    p.set_defaults(handler=_cmd_profile)

    p = sub.add_parser("cheeger", help="solve one domain")
    fam = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    _add_family_parsers(fam, _cmd_cheeger, with_format=True)

    p = sub.add_parser("tables", help="recompute the bundled reference tables")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--jobs", type=int, default=1, help="parallelism degree (reserved)")
    p.set_defaults(handler=_cmd_tables)

    p = sub.add_parser("sweep", help="sweep the hourglass neck height")
    p.add_argument("--a", type=float, default=3.0)
    p.add_argument("--b", type=float, default=2.0)
    p.add_argument("--c", type=float, default=0.3)
    p.add_argument("--d-min", type=float, default=0.05)
    p.add_argument("--d-max", type=float, default=1.95)
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--crit-tol", type=float, default=1e-4)
    p.add_argument(
        "--prescan",
        type=int,
        default=32,
        help="curvature prescan density per solve (the fixed-point "
        "refinement restores full accuracy, so sweeps default to a "
        "coarser scan than single solves)",
    )
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--csv", default=None, help="also write the grid as CSV to this path")
    p.add_argument("--jobs", type=int, default=1, help="parallelism degree (reserved)")
    p.set_defaults(handler=_cmd_sweep)

    p = sub.add_parser("plot", help="render an SVG")
    tgt = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    _add_family_parsers(tgt, _cmd_plot, with_format=False)
    for name in _FAMILY_FLAGS:
        fam_parser = tgt.choices[name]
        fam_parser.add_argument("-o", "--output", required=True, help="SVG output path")
        fam_parser.add_argument("--scale", type=float, default=120.0, help="pixels per unit")
    d = tgt.add_parser("delaunay", help="family of profiles at fixed curvature")
    d.add_argument("--n", type=int, default=3)
    d.add_argument("--curvature", type=float, required=True)
    d.add_argument(
        "--first-integral",
        required=True,
        help="comma-separated first-integral values, one polyline each "
        "(write --first-integral=-0.3,0.1 when the first value is negative)",
    )
    d.add_argument("-o", "--output", required=True, help="SVG output path")
    d.add_argument("--scale", type=float, default=120.0, help="pixels per unit")
    d.add_argument("--tol", type=float, default=None)
    d.set_defaults(handler=_cmd_plot, family="delaunay")

    p = sub.add_parser("check", help="solve a domain and print full certificates")
    fam = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    _add_family_parsers(fam, _cmd_check, with_format=False)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (InvalidParamsError, InadmissibleError, NumericsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
