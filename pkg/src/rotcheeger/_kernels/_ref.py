"""Pure-Python kernel backend (numpy-vectorized reference implementations).

The compiled backend in ``_fast.pyx`` mirrors every public function here with
identical signatures and semantics; cross-backend agreement is enforced by
tests.  All integrands are evaluated on numpy arrays so a quadrature panel is
one vectorized call.

Two integrand families appear:

* Kenmotsu integrals (n=3): with w(t) = sqrt(1 + B^2 + 2B cos 2Ht),
  x-displacement integrand (1 + B cos 2Ht)/w, arc-length weight w, and
  volume weight (1 + B cos 2Ht) w.  Smooth unless |B| = 1 and the span
  touches w = 0.

* Graph-form integrals (any n >= 3): the generating curve as a graph x(y)
  over a monotone-ordinate branch.  With phi(y) = (y^{n-2} - (T + H y^{n-1}))
  * (y^{n-2} + T + H y^{n-1}) = (y^{n-2} sin sigma)^2,

      dx        = (T + H y^{n-1}) / sqrt(phi) dy     (signed: carries cos sigma)
      ds        = y^{n-2} / sqrt(phi) dy
      dA-weight = y^{2(n-2)} / sqrt(phi) dy          (area / ((n-1) omega_{n-1}))
      dV-weight = y^{n-1} (T + H y^{n-1}) / sqrt(phi) dy   (volume / omega_{n-1})

  Endpoints at profile extrema are inverse-square-root singular; every
  integral is therefore split at the midpoint and substituted y = a + u^2 /
  y = b - u^2, which is exact for that singularity and harmless at regular
  endpoints (Gauss-Kronrod nodes are interior, endpoints never evaluated).
"""

from __future__ import annotations

import math

import numpy as np

from ..errors import StepFailureError
from ._gk import adaptive, gk21

__all__ = [
    "kenmotsu_x",
    "kenmotsu_arc",
    "kenmotsu_vol",
    "kenmotsu_x_many",
    "graph_x",
    "graph_arclen",
    "graph_area",
    "graph_vol",
    "profile_ode",
]


# ---------------------------------------------------------------------------
# Kenmotsu integrals (n = 3)
# ---------------------------------------------------------------------------

def _knum_w(H: float, B: float, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Stable evaluation of (1 + B cos 2Ht, w).

    The textbook forms cancel catastrophically near w = 0 (|B| near 1), which
    poisons adaptive error estimates; these identities are sums of same-sign
    terms, so both quantities carry ~eps relative error everywhere:

        B >= 0:  1 + B cos 2Ht = (1-B) + 2B cos^2 Ht,
                 w^2            = (1-B)^2 + 4B cos^2 Ht
        B <  0:  1 + B cos 2Ht = (1+B) - 2B sin^2 Ht,
                 w^2            = (1+B)^2 - 4B sin^2 Ht
    """
    if B >= 0.0:
        q = B * np.cos(H * t) ** 2
        num = (1.0 - B) + 2.0 * q
        w2 = (1.0 - B) ** 2 + 4.0 * q
    else:
        q = -B * np.sin(H * t) ** 2
        num = (1.0 + B) + 2.0 * q
        w2 = (1.0 + B) ** 2 + 4.0 * q
    return num, np.sqrt(w2)


def kenmotsu_x(H: float, B: float, s0: float, s1: float, tol: float = 1e-12) -> float:
    """Signed x-displacement integral_{s0}^{s1} (1 + B cos 2Ht)/w dt."""

    def f(t: np.ndarray) -> np.ndarray:
        num, w = _knum_w(H, B, t)
        return num / w

    return adaptive(f, s0, s1, tol)


def kenmotsu_arc(H: float, B: float, s0: float, s1: float, tol: float = 1e-12) -> float:
    """integral_{s0}^{s1} w dt (arc-length-weighted ordinate, area kernel)."""
    return adaptive(lambda t: _knum_w(H, B, t)[1], s0, s1, tol)


def kenmotsu_vol(H: float, B: float, s0: float, s1: float, tol: float = 1e-12) -> float:
    """integral_{s0}^{s1} (1 + B cos 2Ht) w dt (volume kernel)."""

    def f(t: np.ndarray) -> np.ndarray:
        num, w = _knum_w(H, B, t)
        return num * w

    return adaptive(f, s0, s1, tol)


# Panel layout for the batched fixed-order rule: 4 GK21 panels per interval.
_BATCH_PANELS = 4


def kenmotsu_x_many(
    H: float, B: np.ndarray, s0: np.ndarray, s1: np.ndarray
) -> np.ndarray:
    """Batched x-displacement integrals, fixed 4-panel GK21 per element.

    Used by bracketing scans; the integrand is trigonometric-smooth so the
    fixed rule is accurate to ~1e-12 on the spans that occur (fractions of a
    Kenmotsu period).  Roots located on the scan grid are always re-verified
    with the adaptive scalar kernel before refinement.
    """
    from ._gk import NODES, WEIGHTS_K

    B = np.asarray(B, dtype=float)
    s0 = np.asarray(s0, dtype=float)
    s1 = np.asarray(s1, dtype=float)
    k = _BATCH_PANELS
    edges = np.linspace(0.0, 1.0, k + 1)
    lo = s0[:, None] + (s1 - s0)[:, None] * edges[None, :-1]
    hi = s0[:, None] + (s1 - s0)[:, None] * edges[None, 1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    # t has shape (batch, panels, 21); stable forms as in _knum_w, with the
    # sign split vectorized over the batch axis
    t = mid[:, :, None] + half[:, :, None] * NODES[None, None, :]
    Bc = B[:, None, None]
    pos = Bc >= 0.0
    q = np.where(pos, Bc * np.cos(H * t) ** 2, -Bc * np.sin(H * t) ** 2)
    base = np.where(pos, 1.0 - Bc, 1.0 + Bc)
    num = base + 2.0 * q
    w = np.sqrt(np.maximum(base * base + 4.0 * q, 1e-300))
    return np.einsum("bpn,n,bp->b", num / w, WEIGHTS_K, half)


# ---------------------------------------------------------------------------
# Graph-form integrals (general n)
# ---------------------------------------------------------------------------

def _graph_quad(
    n: int, H: float, T: float, ya: float, yb: float, tol: float, kind: int
) -> float:
    """Common driver: integral over [ya, yb] of the selected graph kernel.

    kind: 0 -> dx, 1 -> ds, 2 -> area weight, 3 -> volume weight.
    Result is signed by the orientation of (ya, yb).

    phi = (f(y) - T)(g(y) + T) with f = y^{n-2} - H y^{n-1} and
    g = y^{n-2} + H y^{n-1} vanishes linearly at profile extrema, where the
    plain evaluation cancels catastrophically.  Each factor is therefore
    expanded about the endpoint anchor z via the exact divided difference
    f(y) - f(z) = (y - z) Qf(y, z), which keeps the substituted integrand
    smooth in u down to roundoff.
    """
    if ya == yb:
        return 0.0
    sgn = 1.0
    lo, hi = ya, yb
    if lo > hi:
        lo, hi = hi, lo
        sgn = -1.0
    m = 0.5 * (lo + hi)
    p = n - 2

    def side(z: float, direction: float):
        zq = z**p
        delta_f = zq - H * zq * z - T
        delta_g = zq + H * zq * z + T
        # an endpoint that is an extremum up to roundoff is meant exactly;
        # the residue would otherwise carve a spurious boundary layer ~sqrt(eps)
        snap = 64.0 * 2.2e-16 * (abs(zq) + abs(H * zq * z) + abs(T))
        if abs(delta_f) < snap:
            delta_f = 0.0
        if abs(delta_g) < snap:
            delta_g = 0.0

        def f(u: np.ndarray) -> np.ndarray:
            d = direction * u * u
            y = z + d
            # P_k = sum y^i z^{k-i} via Horner; need k = n-3 and k = n-2
            acc = np.ones_like(y)
            zp = 1.0
            for _ in range(n - 3):
                zp *= z
                acc = acc * y + zp
            p_lo = acc  # P_{n-3}
            acc = acc * y + zp * z  # P_{n-2}
            qf = p_lo - H * acc
            qg = p_lo + H * acc
            f1 = d * qf + delta_f
            f2 = d * qg + delta_g
            root = np.sqrt(np.maximum(f1 * f2, 1e-300))
            yp = y**p
            if kind == 0:
                num = T + H * yp * y
            elif kind == 1:
                num = yp
            elif kind == 2:
                num = yp * yp
            else:
                num = yp * y * (T + H * yp * y)
            return 2.0 * u * num / root

        return f

    half_tol = 0.5 * tol
    val = adaptive(side(lo, 1.0), 0.0, math.sqrt(m - lo), half_tol)
    val += adaptive(side(hi, -1.0), 0.0, math.sqrt(hi - m), half_tol)
    return sgn * val


def graph_x(n: int, H: float, T: float, ya: float, yb: float, tol: float = 1e-12) -> float:
    """Signed x-advance along the monotone-ordinate branch from ya to yb."""
    return _graph_quad(n, H, T, ya, yb, tol, 0)


def graph_arclen(n: int, H: float, T: float, ya: float, yb: float, tol: float = 1e-12) -> float:
    """Arc length of the branch from ya to yb (positive for ya < yb)."""
    return _graph_quad(n, H, T, ya, yb, tol, 1)


def graph_area(n: int, H: float, T: float, ya: float, yb: float, tol: float = 1e-12) -> float:
    """integral y^{n-2} ds over the branch; multiply by (n-1) omega_{n-1}."""
    return _graph_quad(n, H, T, ya, yb, tol, 2)


def graph_vol(n: int, H: float, T: float, ya: float, yb: float, tol: float = 1e-12) -> float:
    """Signed integral y^{n-1} dx over the branch; multiply by omega_{n-1}."""
    return _graph_quad(n, H, T, ya, yb, tol, 3)


# ---------------------------------------------------------------------------
# Profile ODE (arc-length parametrization of the generating curve)
# ---------------------------------------------------------------------------

# Cash-Karp embedded Runge-Kutta 4(5) tableau.
_CK_C = (0.0, 1.0 / 5.0, 3.0 / 10.0, 3.0 / 5.0, 1.0, 7.0 / 8.0)
_CK_A = (
    (),
    (1.0 / 5.0,),
    (3.0 / 40.0, 9.0 / 40.0),
    (3.0 / 10.0, -9.0 / 10.0, 6.0 / 5.0),
    (-11.0 / 54.0, 5.0 / 2.0, -70.0 / 27.0, 35.0 / 27.0),
    (1631.0 / 55296.0, 175.0 / 512.0, 575.0 / 13824.0, 44275.0 / 110592.0, 253.0 / 4096.0),
)
_CK_B5 = (37.0 / 378.0, 0.0, 250.0 / 621.0, 125.0 / 594.0, 0.0, 512.0 / 1771.0)
_CK_B4 = (
    2825.0 / 27648.0,
    0.0,
    18575.0 / 48384.0,
    13525.0 / 55296.0,
    277.0 / 14336.0,
    1.0 / 4.0,
)
_CK_E = tuple(b5 - b4 for b5, b4 in zip(_CK_B5, _CK_B4))


def profile_ode(
    n: int,
    H: float,
    x0: float,
    y0: float,
    sigma0: float,
    span: float,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    axis_eps: float = 1e-10,
    max_steps: int = 200000,
):
    """Integrate x' = cos sigma, y' = sin sigma,
    sigma' = -(n-1) H + (n-2) cos(sigma)/y over arc length ``span``.

    Returns (s, x, y, sigma, hit_axis) with one sample per accepted step.
    If the trajectory reaches y <= axis_eps the integration stops there, the
    endpoint is extrapolated onto the axis (y=0, sigma=+-pi/2) and
    ``hit_axis`` is True.  Negative span integrates backwards.
    """
    if y0 <= 0.0:
        raise StepFailureError("profile integration must start at y > 0")
    nm1H = (n - 1) * H
    nm2 = float(n - 2)

    def deriv(x: float, y: float, sg: float):
        if y <= 0.0:
            return None
        c = math.cos(sg)
        return (c, math.sin(sg), -nm1H + nm2 * c / y)

    direction = 1.0 if span >= 0.0 else -1.0
    s_end = span
    s = 0.0
    x, y, sg = float(x0), float(y0), float(sigma0)
    ss = [s]
    xs = [x]
    ys = [y]
    sgs = [sg]
    hit_axis = False
    if span == 0.0:
        return (np.array(ss), np.array(xs), np.array(ys), np.array(sgs), False)

    curv_scale = abs(nm1H) + nm2 / y0 + 1.0
    h = direction * min(abs(span) / 8.0, 0.5 / curv_scale)
    steps = 0
    hmin = 1e-14 * max(1.0, abs(span))
    while direction * (s_end - s) > 0.0:
        if steps >= max_steps:
            raise StepFailureError(f"step budget {max_steps} exceeded at s={s:g}")
        steps += 1
        if direction * (s + h) > direction * s_end:
            h = s_end - s
        # Cash-Karp stages
        k = []
        reject_stage = False
        for i in range(6):
            xi, yi, gi = x, y, sg
            arow = _CK_A[i]
            for j, aij in enumerate(arow):
                xi += h * aij * k[j][0]
                yi += h * aij * k[j][1]
                gi += h * aij * k[j][2]
            d = deriv(xi, yi, gi)
            if d is None:
                reject_stage = True
                break
            k.append(d)
        if not reject_stage:
            x5 = x + h * sum(b * ki[0] for b, ki in zip(_CK_B5, k))
            y5 = y + h * sum(b * ki[1] for b, ki in zip(_CK_B5, k))
            g5 = sg + h * sum(b * ki[2] for b, ki in zip(_CK_B5, k))
            ex = h * sum(e * ki[0] for e, ki in zip(_CK_E, k))
            ey = h * sum(e * ki[1] for e, ki in zip(_CK_E, k))
            eg = h * sum(e * ki[2] for e, ki in zip(_CK_E, k))
            sc_x = atol + rtol * max(abs(x), abs(x5))
            sc_y = atol + rtol * max(abs(y), abs(y5))
            sc_g = atol + rtol * max(abs(sg), abs(g5))
            errnorm = max(abs(ex) / sc_x, abs(ey) / sc_y, abs(eg) / sc_g)
            if y5 <= 0.0:
                errnorm = math.inf
        else:
            errnorm = math.inf
        if errnorm <= 1.0 and not reject_stage:
            s += h
            x, y, sg = x5, y5, g5
            ss.append(s)
            xs.append(x)
            ys.append(y)
            sgs.append(sg)
            if y <= axis_eps:
                sn = math.sin(sg)
                if sn != 0.0:
                    dt = -y / sn
                    s += abs(dt)
                    x += dt * math.cos(sg)
                ss.append(s)
                xs.append(x)
                ys.append(0.0)
                sgs.append(math.copysign(math.pi / 2.0, sn if sn != 0.0 else 1.0))
                hit_axis = True
                break
            # grow step
            if errnorm == 0.0:
                fac = 5.0
            else:
                fac = min(5.0, max(0.2, 0.9 * errnorm ** -0.2))
            h *= fac
        else:
            if not math.isfinite(errnorm):
                h *= 0.5
            else:
                h *= min(0.9, max(0.2, 0.9 * errnorm ** -0.2))
            if abs(h) < hmin:
                # trajectory pinned: treat as axis contact if close, else fail
                if y <= 1e3 * axis_eps:
                    sn = math.sin(sg)
                    if sn != 0.0:
                        dt = -y / sn
                        s += abs(dt)
                        x += dt * math.cos(sg)
                    ss.append(s)
                    xs.append(x)
                    ys.append(0.0)
                    sgs.append(math.copysign(math.pi / 2.0, sn if sn != 0.0 else 1.0))
                    hit_axis = True
                    break
                raise StepFailureError(
                    f"step size underflow at s={s:g} (y={y:g})"
                )
    return (np.array(ss), np.array(xs), np.array(ys), np.array(sgs), hit_axis)
