# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend (Cython).

Function-for-function mirror of ``_ref`` — same names, signatures, tolerance
semantics, and error behaviour.  See ``_ref`` for the mathematics; this
module only swaps numpy-vectorized evaluation for C loops.
"""

from libc.math cimport INFINITY, M_PI, cos, copysign, fabs, isfinite, sin, sqrt

import numpy as np

from rotcheeger.errors import QuadratureError, StepFailureError

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
# Gauss-Kronrod 21 constants (copied from _gk at import so both backends use
# bit-identical nodes and weights)
# ---------------------------------------------------------------------------

cdef double NODES_C[21]
cdef double WK_C[21]
cdef double WGAUSS_C[21]

from ._gk import NODES as _NODES_PY
from ._gk import WEIGHTS_G as _WGAUSS_PY
from ._gk import WEIGHTS_K as _WK_PY

for _i in range(21):
    NODES_C[_i] = _NODES_PY[_i]
    WK_C[_i] = _WK_PY[_i]
    WGAUSS_C[_i] = _WGAUSS_PY[_i]

cdef int MAX_DEPTH = 48
cdef int MAX_PANELS = 4096
# stack capacity 64: depth-first split keeps <= depth+2 pending panels


# ---------------------------------------------------------------------------
# Integrand dispatch
# ---------------------------------------------------------------------------

# kind 0/1/2: Kenmotsu x / arc / volume kernels (fields H, B)
# kind 10..13: graph dx / ds / area / volume kernels
#              (fields n, H, T, z, direction, delta_f, delta_g)
ctypedef struct Params:
    int kind
    int n
    double H
    double B
    double T
    double z
    double direction
    double delta_f
    double delta_g


cdef double eval_integrand(Params* p, double t):
    cdef double c, w, q, base, d, y, acc, zp, p_lo, qf, qg, f1, f2, prod, yp, num
    cdef int i
    if p.kind < 10:
        # stable split of (1 + B cos 2Ht, w): sums of same-sign terms, so no
        # cancellation near w = 0 (see _ref._knum_w)
        if p.B >= 0.0:
            c = cos(p.H * t)
            q = p.B * c * c
            base = 1.0 - p.B
        else:
            c = sin(p.H * t)
            q = -p.B * c * c
            base = 1.0 + p.B
        num = base + 2.0 * q
        w = sqrt(base * base + 4.0 * q)
        if p.kind == 0:
            return num / w
        elif p.kind == 1:
            return w
        return num * w
    # graph kernels: t plays the role of the substitution variable u
    d = p.direction * t * t
    y = p.z + d
    acc = 1.0
    zp = 1.0
    for i in range(p.n - 3):
        zp *= p.z
        acc = acc * y + zp
    p_lo = acc                    # P_{n-3}(y, z)
    acc = acc * y + zp * p.z      # P_{n-2}(y, z)
    qf = p_lo - p.H * acc
    qg = p_lo + p.H * acc
    f1 = d * qf + p.delta_f
    f2 = d * qg + p.delta_g
    prod = f1 * f2
    if prod < 1e-300:
        prod = 1e-300
    yp = 1.0
    for i in range(p.n - 2):
        yp *= y
    if p.kind == 10:
        num = p.T + p.H * yp * y
    elif p.kind == 11:
        num = yp
    elif p.kind == 12:
        num = yp * yp
    else:
        num = yp * y * (p.T + p.H * yp * y)
    return 2.0 * t * num / sqrt(prod)


cdef void gk21_c(Params* p, double a, double b,
                 double* resk, double* err, double* resabs):
    cdef double half = 0.5 * (b - a)
    cdef double mid = 0.5 * (a + b)
    cdef double sk = 0.0, sg = 0.0, sa = 0.0, fv
    cdef int i
    for i in range(21):
        fv = eval_integrand(p, mid + half * NODES_C[i])
        sk += WK_C[i] * fv
        sg += WGAUSS_C[i] * fv
        sa += WK_C[i] * fabs(fv)
    resk[0] = half * sk
    err[0] = fabs(half * sk - half * sg)
    resabs[0] = fabs(half) * sa


cdef double adaptive_c(Params* p, double a, double b, double tol) except *:
    """Mirror of _gk.adaptive: LIFO bisection, local tolerance halving,
    noise floor 1e-10*resabs, QuadratureError on exhaustion."""
    if a == b:
        return 0.0
    if b < a:
        return -adaptive_c(p, b, a, tol)
    cdef double sa_[64]
    cdef double sb_[64]
    cdef double st_[64]
    cdef int sd_[64]
    cdef int top = 0, panels = 0, depth
    cdef double a0, b0, t0, m, val, err, resabs, thresh, total = 0.0
    sa_[0] = a
    sb_[0] = b
    st_[0] = tol
    sd_[0] = 0
    top = 1
    while top > 0:
        top -= 1
        a0 = sa_[top]
        b0 = sb_[top]
        t0 = st_[top]
        depth = sd_[top]
        gk21_c(p, a0, b0, &val, &err, &resabs)
        panels += 1
        thresh = t0
        if 1e-10 * resabs > thresh:  # see _gk.adaptive for the rationale
            thresh = 1e-10 * resabs
        if isfinite(val) and err <= thresh:
            total += val
            continue
        if depth >= MAX_DEPTH or panels >= MAX_PANELS:
            raise QuadratureError(
                f"tolerance {tol:g} unreachable on [{a}, {b}] "
                f"(residual panel error {err:g} on [{a0}, {b0}])"
            )
        m = 0.5 * (a0 + b0)
        if m <= a0 or m >= b0:
            raise QuadratureError(
                f"panel [{a0}, {b0}] cannot be split further (tol {tol:g})"
            )
        if top + 2 > 64:  # unreachable before MAX_DEPTH trips
            raise QuadratureError(f"panel stack overflow on [{a}, {b}]")
        sa_[top] = a0
        sb_[top] = m
        st_[top] = 0.5 * t0
        sd_[top] = depth + 1
        sa_[top + 1] = m
        sb_[top + 1] = b0
        st_[top + 1] = 0.5 * t0
        sd_[top + 1] = depth + 1
        top += 2
    return total


# ---------------------------------------------------------------------------
# Kenmotsu integrals (n = 3)
# ---------------------------------------------------------------------------

def kenmotsu_x(double H, double B, double s0, double s1, double tol=1e-12):
    """Signed x-displacement integral_{s0}^{s1} (1 + B cos 2Ht)/w dt."""
    cdef Params p
    p.kind = 0
    p.H = H
    p.B = B
    return adaptive_c(&p, s0, s1, tol)


def kenmotsu_arc(double H, double B, double s0, double s1, double tol=1e-12):
    """integral_{s0}^{s1} w dt (arc-length-weighted ordinate, area kernel)."""
    cdef Params p
    p.kind = 1
    p.H = H
    p.B = B
    return adaptive_c(&p, s0, s1, tol)


def kenmotsu_vol(double H, double B, double s0, double s1, double tol=1e-12):
    """integral_{s0}^{s1} (1 + B cos 2Ht) w dt (volume kernel)."""
    cdef Params p
    p.kind = 2
    p.H = H
    p.B = B
    return adaptive_c(&p, s0, s1, tol)


def kenmotsu_x_many(double H, B, s0, s1):
    """Batched x-displacement integrals, fixed 4-panel GK21 per element.

    Same contract as the reference implementation: bracketing-scan accuracy,
    roots re-verified with the adaptive scalar kernel before refinement.
    """
    cdef double[::1] Bv = np.ascontiguousarray(B, dtype=np.float64)
    cdef double[::1] av = np.ascontiguousarray(s0, dtype=np.float64)
    cdef double[::1] bv = np.ascontiguousarray(s1, dtype=np.float64)
    cdef Py_ssize_t nb = Bv.shape[0]
    if av.shape[0] != nb or bv.shape[0] != nb:
        raise ValueError("kenmotsu_x_many: mismatched batch lengths")
    out_arr = np.empty(nb, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t ib
    cdef int panel, node
    cdef double Bi, lo, hi, half, mid, t, c, q, base, w2, acc, width, total
    for ib in range(nb):
        Bi = Bv[ib]
        width = (bv[ib] - av[ib]) / 4.0
        total = 0.0
        for panel in range(4):
            lo = av[ib] + width * panel
            hi = lo + width
            half = 0.5 * (hi - lo)
            mid = 0.5 * (hi + lo)
            acc = 0.0
            for node in range(21):
                t = mid + half * NODES_C[node]
                if Bi >= 0.0:
                    c = cos(H * t)
                    q = Bi * c * c
                    base = 1.0 - Bi
                else:
                    c = sin(H * t)
                    q = -Bi * c * c
                    base = 1.0 + Bi
                w2 = base * base + 4.0 * q
                if w2 < 1e-300:
                    w2 = 1e-300
                acc += WK_C[node] * (base + 2.0 * q) / sqrt(w2)
            total += half * acc
        out[ib] = total
    return out_arr


# ---------------------------------------------------------------------------
# Graph-form integrals (general n)
# ---------------------------------------------------------------------------

cdef double _graph_quad_c(int n, double H, double T, double ya, double yb,
                          double tol, int kind) except *:
    if ya == yb:
        return 0.0
    cdef double sgn = 1.0
    cdef double lo = ya, hi = yb, tmp, m, zq, delta_f, delta_g, snap, val
    cdef int ip
    cdef Params p
    if lo > hi:
        tmp = lo
        lo = hi
        hi = tmp
        sgn = -1.0
    m = 0.5 * (lo + hi)
    p.kind = 10 + kind
    p.n = n
    p.H = H
    p.T = T

    # lower side: y = lo + u^2
    zq = 1.0
    for ip in range(n - 2):
        zq *= lo
    delta_f = zq - H * zq * lo - T
    delta_g = zq + H * zq * lo + T
    snap = 64.0 * 2.2e-16 * (fabs(zq) + fabs(H * zq * lo) + fabs(T))
    if fabs(delta_f) < snap:
        delta_f = 0.0
    if fabs(delta_g) < snap:
        delta_g = 0.0
    p.z = lo
    p.direction = 1.0
    p.delta_f = delta_f
    p.delta_g = delta_g
    val = adaptive_c(&p, 0.0, sqrt(m - lo), 0.5 * tol)

    # upper side: y = hi - u^2
    zq = 1.0
    for ip in range(n - 2):
        zq *= hi
    delta_f = zq - H * zq * hi - T
    delta_g = zq + H * zq * hi + T
    snap = 64.0 * 2.2e-16 * (fabs(zq) + fabs(H * zq * hi) + fabs(T))
    if fabs(delta_f) < snap:
        delta_f = 0.0
    if fabs(delta_g) < snap:
        delta_g = 0.0
    p.z = hi
    p.direction = -1.0
    p.delta_f = delta_f
    p.delta_g = delta_g
    val += adaptive_c(&p, 0.0, sqrt(hi - m), 0.5 * tol)
    return sgn * val


def graph_x(int n, double H, double T, double ya, double yb, double tol=1e-12):
    """Signed x-advance along the monotone-ordinate branch from ya to yb."""
    return _graph_quad_c(n, H, T, ya, yb, tol, 0)


def graph_arclen(int n, double H, double T, double ya, double yb, double tol=1e-12):
    """Arc length of the branch from ya to yb (positive for ya < yb)."""
    return _graph_quad_c(n, H, T, ya, yb, tol, 1)


def graph_area(int n, double H, double T, double ya, double yb, double tol=1e-12):
    """integral y^{n-2} ds over the branch; multiply by (n-1) omega_{n-1}."""
    return _graph_quad_c(n, H, T, ya, yb, tol, 2)


def graph_vol(int n, double H, double T, double ya, double yb, double tol=1e-12):
    """Signed integral y^{n-1} dx over the branch; multiply by omega_{n-1}."""
    return _graph_quad_c(n, H, T, ya, yb, tol, 3)


# ---------------------------------------------------------------------------
# Profile ODE (arc-length parametrization of the generating curve)
# ---------------------------------------------------------------------------

cdef double CK_A_[6][5]
CK_A_[1][0] = 1.0 / 5.0
CK_A_[2][0] = 3.0 / 40.0
CK_A_[2][1] = 9.0 / 40.0
CK_A_[3][0] = 3.0 / 10.0
CK_A_[3][1] = -9.0 / 10.0
CK_A_[3][2] = 6.0 / 5.0
CK_A_[4][0] = -11.0 / 54.0
CK_A_[4][1] = 5.0 / 2.0
CK_A_[4][2] = -70.0 / 27.0
CK_A_[4][3] = 35.0 / 27.0
CK_A_[5][0] = 1631.0 / 55296.0
CK_A_[5][1] = 175.0 / 512.0
CK_A_[5][2] = 575.0 / 13824.0
CK_A_[5][3] = 44275.0 / 110592.0
CK_A_[5][4] = 253.0 / 4096.0

cdef double CK_B5_[6]
CK_B5_[0] = 37.0 / 378.0
CK_B5_[1] = 0.0
CK_B5_[2] = 250.0 / 621.0
CK_B5_[3] = 125.0 / 594.0
CK_B5_[4] = 0.0
CK_B5_[5] = 512.0 / 1771.0

cdef double CK_E_[6]
CK_E_[0] = 37.0 / 378.0 - 2825.0 / 27648.0
CK_E_[1] = 0.0
CK_E_[2] = 250.0 / 621.0 - 18575.0 / 48384.0
CK_E_[3] = 125.0 / 594.0 - 13525.0 / 55296.0
CK_E_[4] = -277.0 / 14336.0
CK_E_[5] = 512.0 / 1771.0 - 1.0 / 4.0


def profile_ode(int n, double H, double x0, double y0, double sigma0,
                double span, double rtol=1e-10, double atol=1e-12,
                double axis_eps=1e-10, int max_steps=200000):
    """Integrate x' = cos sigma, y' = sin sigma,
    sigma' = -(n-1) H + (n-2) cos(sigma)/y over arc length ``span``.

    Returns (s, x, y, sigma, hit_axis); see the reference backend for the
    full contract (axis extrapolation, negative span, error control).
    """
    if y0 <= 0.0:
        raise StepFailureError("profile integration must start at y > 0")
    cdef double nm1H = (n - 1) * H
    cdef double nm2 = n - 2
    cdef double direction = 1.0 if span >= 0.0 else -1.0
    cdef double s_end = span
    cdef double s = 0.0, x = x0, y = y0, sg = sigma0
    cdef list ss = [0.0], xs = [x0], ys = [y0], sgs = [sigma0]
    cdef bint hit_axis = False
    if span == 0.0:
        return (np.array(ss), np.array(xs), np.array(ys), np.array(sgs), False)

    cdef double curv_scale = fabs(nm1H) + nm2 / y0 + 1.0
    cdef double h0a = fabs(span) / 8.0
    cdef double h0b = 0.5 / curv_scale
    cdef double h = direction * (h0a if h0a < h0b else h0b)
    cdef double hmin = 1e-14 * (1.0 if fabs(span) < 1.0 else fabs(span))
    cdef int steps = 0
    cdef double kx[6]
    cdef double ky[6]
    cdef double kg[6]
    cdef double xi, yi, gi, ci, x5, y5, g5, ex, ey, eg
    cdef double sc_x, sc_y, sc_g, errnorm, fac, sn, dt
    cdef int i, j
    cdef bint reject_stage

    while direction * (s_end - s) > 0.0:
        if steps >= max_steps:
            raise StepFailureError(f"step budget {max_steps} exceeded at s={s:g}")
        steps += 1
        if direction * (s + h) > direction * s_end:
            h = s_end - s
        reject_stage = False
        for i in range(6):
            xi = x
            yi = y
            gi = sg
            for j in range(i):
                xi += h * CK_A_[i][j] * kx[j]
                yi += h * CK_A_[i][j] * ky[j]
                gi += h * CK_A_[i][j] * kg[j]
            if yi <= 0.0:
                reject_stage = True
                break
            ci = cos(gi)
            kx[i] = ci
            ky[i] = sin(gi)
            kg[i] = -nm1H + nm2 * ci / yi
        if not reject_stage:
            x5 = x
            y5 = y
            g5 = sg
            ex = 0.0
            ey = 0.0
            eg = 0.0
            for i in range(6):
                x5 += h * CK_B5_[i] * kx[i]
                y5 += h * CK_B5_[i] * ky[i]
                g5 += h * CK_B5_[i] * kg[i]
                ex += h * CK_E_[i] * kx[i]
                ey += h * CK_E_[i] * ky[i]
                eg += h * CK_E_[i] * kg[i]
            sc_x = atol + rtol * (fabs(x) if fabs(x) > fabs(x5) else fabs(x5))
            sc_y = atol + rtol * (fabs(y) if fabs(y) > fabs(y5) else fabs(y5))
            sc_g = atol + rtol * (fabs(sg) if fabs(sg) > fabs(g5) else fabs(g5))
            errnorm = fabs(ex) / sc_x
            if fabs(ey) / sc_y > errnorm:
                errnorm = fabs(ey) / sc_y
            if fabs(eg) / sc_g > errnorm:
                errnorm = fabs(eg) / sc_g
            if y5 <= 0.0:
                errnorm = INFINITY
        else:
            errnorm = INFINITY
        if errnorm <= 1.0 and not reject_stage:
            s += h
            x = x5
            y = y5
            sg = g5
            ss.append(s)
            xs.append(x)
            ys.append(y)
            sgs.append(sg)
            if y <= axis_eps:
                sn = sin(sg)
                if sn != 0.0:
                    dt = -y / sn
                    s += fabs(dt)
                    x += dt * cos(sg)
                ss.append(s)
                xs.append(x)
                ys.append(0.0)
                sgs.append(copysign(M_PI / 2.0, sn if sn != 0.0 else 1.0))
                hit_axis = True
                break
            if errnorm == 0.0:
                fac = 5.0
            else:
                fac = 0.9 * errnorm ** -0.2
                if fac > 5.0:
                    fac = 5.0
                elif fac < 0.2:
                    fac = 0.2
            h *= fac
        else:
            if not isfinite(errnorm):
                h *= 0.5
            else:
                fac = 0.9 * errnorm ** -0.2
                if fac > 0.9:
                    fac = 0.9
                elif fac < 0.2:
                    fac = 0.2
                h *= fac
            if fabs(h) < hmin:
                if y <= 1e3 * axis_eps:
                    sn = sin(sg)
                    if sn != 0.0:
                        dt = -y / sn
                        s += fabs(dt)
                        x += dt * cos(sg)
                    ss.append(s)
                    xs.append(x)
                    ys.append(0.0)
                    sgs.append(copysign(M_PI / 2.0, sn if sn != 0.0 else 1.0))
                    hit_axis = True
                    break
                raise StepFailureError(f"step size underflow at s={s:g} (y={y:g})")
    return (np.array(ss), np.array(xs), np.array(ys), np.array(sgs), hit_axis)
