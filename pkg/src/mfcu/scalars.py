"""Scalar numerical building blocks compiled with numba.

Every formula used inside the sweep kernels lives here exactly once; the
python-facing operation wrappers in :mod:`mfcu.recon`, :mod:`mfcu.globalflux`
and :mod:`mfcu.ldflux` call the same compiled functions, so unit tests
exercise the code path the solver runs.
"""

import math

from numba import njit


@njit(cache=True, inline="always")
def minmod2(a, b):
    if a > 0.0 and b > 0.0:
        return min(a, b)
    if a < 0.0 and b < 0.0:
        return max(a, b)
    return 0.0


@njit(cache=True, inline="always")
def minmod3(a, b, c):
    if a > 0.0 and b > 0.0 and c > 0.0:
        return min(a, min(b, c))
    if a < 0.0 and b < 0.0 and c < 0.0:
        return max(a, max(b, c))
    return 0.0


@njit(cache=True, inline="always")
def phi_sbm(r, theta, tau):
    """Two-parameter slope-limiter function.

    0 for r < 0; min(r*theta, 1 + tau(r-1)) on (0, 1]; the r > 1 branch is the
    closed form of r*phi(1/r), which also absorbs r = +inf.
    """
    if r <= 0.0:
        return 0.0
    if r <= 1.0:
        return min(r * theta, 1.0 + tau * (r - 1.0))
    return min(theta, r + tau * (1.0 - r))


@njit(cache=True, inline="always")
def slope_limited(vm, v0, vp, inv_h, theta, tau):
    """Limited slope of cell data (vm, v0, vp) with spacing 1/inv_h.

    Written as phi(db/df) * df / h, the reflection-symmetric pairing that
    reduces to minmod(theta*db, (df+db)/2, theta*df)/h for tau = 1/2.  A zero
    forward difference returns slope 0 (the phi(+-inf) limit).
    """
    df = vp - v0
    if df == 0.0:
        return 0.0
    r = (v0 - vm) / df
    return phi_sbm(r, theta, tau) * df * inv_h


@njit(cache=True, inline="always")
def sound_speed_sq(rho, p, gam, pi):
    return ((1.0 + gam) * p + pi) / (gam * rho)


@njit(cache=True)
def pressure_1d(rho, mx, en, gam, pi):
    return (en - 0.5 * (mx * mx) / rho - pi) / gam


@njit(cache=True)
def pressure_2d(rho, mx, my, en, gam, pi):
    return (en - 0.5 * (mx * mx + my * my) / rho - pi) / gam


@njit(cache=True)
def energy_1d(rho, u, p, gam, pi):
    return gam * p + 0.5 * rho * (u * u) + pi


@njit(cache=True)
def energy_2d(rho, u, v, p, gam, pi):
    return gam * p + 0.5 * rho * (u * u + v * v) + pi


@njit(cache=True, inline="always")
def local_speeds_pair(um, cm, up, cp):
    """One-sided propagation speed bounds (a-, a+) at an interface."""
    ap = max(max(um + cm, up + cp), 0.0)
    am = min(min(um - cm, up - cp), 0.0)
    return am, ap


@njit(cache=True, inline="always")
def cu_component(am, ap, inv_da, Km, Kp, Um, Up):
    """Central-upwind flux for one component of the global flux."""
    return (ap * Km - am * Kp) * inv_da + (ap * am * inv_da) * (Up - Um)


@njit(cache=True, inline="always")
def star_component(am, ap, inv_da, Km, Kp, Um, Up):
    """Intermediate-state component (a+ U+ - a- U- - (K+ - K-)) / (a+ - a-)."""
    return (ap * Up - am * Um - (Kp - Km)) * inv_da


@njit(cache=True, inline="always")
def q_energy_weight(E_s, m_s, rho_s, pi_s, gam_s):
    """Weight multiplying the Gamma anti-diffusion in the energy component."""
    return (E_s - (m_s * m_s) / (2.0 * rho_s) - pi_s) / gam_s


@njit(cache=True, inline="always")
def q_energy_transverse(am, ap, inv_da, rho_s, mt_s, q_rho, q_mt, q_g, gam_s):
    """Transverse-momentum contribution to the 2-D energy anti-diffusion.

    Derived from the projection constraints: the left/right interface states
    carry shifted density and transverse momentum (shifts q/a- and q/a+), the
    common pressure absorbs the transverse kinetic energy, and matching
    a-(E_L - E*) = a+(E_R - E*) yields

        (a+ a-/(a+ - a-)) * [ (1 + q_G/(a+ G*)) KE_L - (1 + q_G/(a- G*)) KE_R ]

    with KE_L/R the shifted transverse kinetic quotients.  The caller
    guarantees the shifted densities are positive and both speeds exceed the
    desingularization threshold.
    """
    num_r = mt_s + q_mt / ap
    den_r = rho_s + q_rho / ap
    num_l = mt_s + q_mt / am
    den_l = rho_s + q_rho / am
    w_l = 1.0 + q_g / (ap * gam_s)
    w_r = 1.0 + q_g / (am * gam_s)
    return (ap * am * inv_da) * (
        w_l * num_l * num_l / (2.0 * den_l) - w_r * num_r * num_r / (2.0 * den_r)
    )


# --- fifth-order interpolation -------------------------------------------

AIWENO_D0 = 1.0 / 16.0
AIWENO_D1 = 5.0 / 8.0
AIWENO_D2 = 5.0 / 16.0
AIWENO_EPS = 1.0e-12
AIWENO_MU_FLOOR = 1.0e-40


@njit(cache=True, inline="always")
def aiweno_left(w0, w1, w2, w3, w4, w5):
    """Left-biased fifth-order interpolated value at the w2|w3 midpoint.

    Affine-invariant nonlinear weights: the usual smoothness indicators are
    regularized by eps * mu^2 where mu is the mean absolute deviation of the
    five left-biased window points, which makes the weights invariant under
    affine rescaling of the data.  w5 is unused on this side; it keeps the
    mirror call symmetric.
    """
    p0 = (3.0 * w0 - 10.0 * w1 + 15.0 * w2) / 8.0
    p1 = (-w1 + 6.0 * w2 + 3.0 * w3) / 8.0
    p2 = (3.0 * w2 + 6.0 * w3 - w4) / 8.0

    # difference-of-differences form of the smoothness indicators: identical
    # algebra, but constant windows give exact zeros, so the weights reduce
    # to d exactly
    d01 = w0 - w1
    d12 = w1 - w2
    d23 = w2 - w3
    d34 = w3 - w4
    b0 = (13.0 / 12.0) * (d01 - d12) ** 2 + 0.25 * (d01 - 3.0 * d12) ** 2
    b1 = (13.0 / 12.0) * (d12 - d23) ** 2 + 0.25 * (d12 + d23) ** 2
    b2 = (13.0 / 12.0) * (d23 - d34) ** 2 + 0.25 * (3.0 * d23 - d34) ** 2

    wbar = (w0 + w1 + w2 + w3 + w4) / 5.0
    mu = (
        abs(w0 - wbar) + abs(w1 - wbar) + abs(w2 - wbar) + abs(w3 - wbar) + abs(w4 - wbar)
    ) / 5.0 + AIWENO_MU_FLOOR
    tau5 = abs(b2 - b0)
    reg = AIWENO_EPS * mu * mu

    t0 = tau5 / (b0 + reg)
    t1 = tau5 / (b1 + reg)
    t2 = tau5 / (b2 + reg)
    a0 = AIWENO_D0 * (1.0 + t0 * t0)
    a1 = AIWENO_D1 * (1.0 + t1 * t1)
    a2 = AIWENO_D2 * (1.0 + t2 * t2)
    inv = 1.0 / (a0 + a1 + a2)
    return (a0 * p0 + a1 * p1 + a2 * p2) * inv


@njit(cache=True, inline="always")
def aiweno_right(w0, w1, w2, w3, w4, w5):
    """Right-biased value at the w2|w3 midpoint: the mirror of aiweno_left."""
    return aiweno_left(w5, w4, w3, w2, w1, w0)


@njit(cache=True)
def aiweno_weights(w0, w1, w2, w3, w4):
    """Nonlinear weights of the left-biased interpolation (for diagnostics)."""
    d01 = w0 - w1
    d12 = w1 - w2
    d23 = w2 - w3
    d34 = w3 - w4
    b0 = (13.0 / 12.0) * (d01 - d12) ** 2 + 0.25 * (d01 - 3.0 * d12) ** 2
    b1 = (13.0 / 12.0) * (d12 - d23) ** 2 + 0.25 * (d12 + d23) ** 2
    b2 = (13.0 / 12.0) * (d23 - d34) ** 2 + 0.25 * (3.0 * d23 - d34) ** 2
    wbar = (w0 + w1 + w2 + w3 + w4) / 5.0
    mu = (
        abs(w0 - wbar) + abs(w1 - wbar) + abs(w2 - wbar) + abs(w3 - wbar) + abs(w4 - wbar)
    ) / 5.0 + AIWENO_MU_FLOOR
    tau5 = abs(b2 - b0)
    reg = AIWENO_EPS * mu * mu
    t0 = tau5 / (b0 + reg)
    t1 = tau5 / (b1 + reg)
    t2 = tau5 / (b2 + reg)
    a0 = AIWENO_D0 * (1.0 + t0 * t0)
    a1 = AIWENO_D1 * (1.0 + t1 * t1)
    a2 = AIWENO_D2 * (1.0 + t2 * t2)
    inv = 1.0 / (a0 + a1 + a2)
    return a0 * inv, a1 * inv, a2 * inv


@njit(cache=True, inline="always")
def roe_like_averages(rho_l, u_l, p_l, gam_l, pi_l, rho_r, u_r, p_r, gam_r, pi_r):
    """Sqrt-density-weighted interface averages (rho, u, p, gamma, pi_inf, c).

    gamma and pi_inf here are the raw EOS parameters recovered from the
    advected pair: gamma = 1 + 1/Gamma, pi_inf = Pi / (1 + Gamma).
    """
    sl = math.sqrt(rho_l)
    sr = math.sqrt(rho_r)
    inv = 1.0 / (sl + sr)
    rho_h = sl * sr
    u_h = (sl * u_l + sr * u_r) * inv
    p_h = (sl * p_l + sr * p_r) * inv
    g_h = (sl * gam_l + sr * gam_r) * inv
    pi_h = (sl * pi_l + sr * pi_r) * inv
    c2 = g_h * (p_h + pi_h) / rho_h
    return rho_h, u_h, p_h, g_h, pi_h, c2
