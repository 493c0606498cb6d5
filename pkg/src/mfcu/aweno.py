"""Fifth-order layer: affine-invariant WENO-Z interpolation of local
characteristic variables, high-order flux corrections, and the hybrid
positivity switch.

Interpolation acts on primitive variables transformed by the frozen
eigenbasis of a sqrt-density-averaged quasi-linear coefficient matrix;
conserved interface values are rebuilt from the interpolated primitives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from mfcu.scalars import (
    AIWENO_D0,
    AIWENO_D1,
    AIWENO_D2,
    aiweno_left,
    aiweno_right,
    aiweno_weights,
    roe_like_averages,
)

D_WEIGHTS = (AIWENO_D0, AIWENO_D1, AIWENO_D2)


def aiweno_interpolate(window) -> Tuple[float, float]:
    """Both-sided interpolated values at the midpoint of a six-point window.

    ``window`` holds values at six consecutive uniform grid points; the
    returned pair (left-biased, right-biased) approximates the underlying
    function at the midpoint between points 2 and 3.  The right-biased value
    applies the same formulas to the reversed window.
    """
    w = np.asarray(window, dtype=np.float64)
    if w.shape != (6,):
        raise ValueError("window must hold exactly 6 values")
    if not np.all(np.isfinite(w)):
        raise ValueError("window values must be finite")
    wm = aiweno_left(w[0], w[1], w[2], w[3], w[4], w[5])
    wp = aiweno_right(w[0], w[1], w[2], w[3], w[4], w[5])
    return wm, wp


def interpolation_weights(window) -> Tuple[float, float, float]:
    """Nonlinear weights of the left-biased value (sums to 1)."""
    w = np.asarray(window, dtype=np.float64)
    return aiweno_weights(w[0], w[1], w[2], w[3], w[4])


@dataclass
class LcdBasis:
    """Averaged interface quantities and the frozen eigenvector pair."""

    rho: float
    u: float
    p: float
    gamma: float
    pi_inf: float
    c: float
    R: np.ndarray
    Rinv: np.ndarray


def _averages(Vl, Vr, longitudinal: int):
    gam_l = 1.0 + 1.0 / Vl[-2]
    gam_r = 1.0 + 1.0 / Vr[-2]
    pin_l = Vl[-1] / (1.0 + Vl[-2])
    pin_r = Vr[-1] / (1.0 + Vr[-2])
    pidx = len(Vl) - 3
    return roe_like_averages(
        Vl[0], Vl[longitudinal], Vl[pidx], gam_l, pin_l,
        Vr[0], Vr[longitudinal], Vr[pidx], gam_r, pin_r,
    )


def lcd_basis_1d(Vl, Vr) -> LcdBasis:
    """Eigenbasis for 1-D primitive vectors (rho, u, p, Gamma, Pi).

    Raises ValueError when the averaged p + pi_inf is nonpositive (callers
    fall back to componentwise interpolation).
    """
    rho_h, u_h, p_h, g_h, pi_h, c2 = _averages(np.asarray(Vl), np.asarray(Vr), 1)
    if c2 <= 0.0:
        raise ValueError("averaged state has nonpositive p + pi_inf")
    c = np.sqrt(c2)
    rc = rho_h * c
    R = np.array(
        [
            [1.0 / c2, 0.0, 0.0, 1.0, 1.0 / c2],
            [-1.0 / rc, 0.0, 0.0, 0.0, 1.0 / rc],
            [1.0, 0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, 0.0],
        ]
    )
    Rinv = np.array(
        [
            [0.0, -0.5 * rc, 0.5, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 1.0, 0.0],
            [1.0, 0.0, -1.0 / c2, 0.0, 0.0],
            [0.0, 0.5 * rc, 0.5, 0.0, 0.0],
        ]
    )
    return LcdBasis(rho=rho_h, u=u_h, p=p_h, gamma=g_h, pi_inf=pi_h, c=c, R=R, Rinv=Rinv)


def lcd_basis_2d_x(Vl, Vr) -> LcdBasis:
    """Eigenbasis for 2-D primitives (rho, u, v, p, Gamma, Pi), x-direction."""
    rho_h, u_h, p_h, g_h, pi_h, c2 = _averages(np.asarray(Vl), np.asarray(Vr), 1)
    if c2 <= 0.0:
        raise ValueError("averaged state has nonpositive p + pi_inf")
    c = np.sqrt(c2)
    rc = rho_h * c
    R = np.array(
        [
            [1.0 / c2, 0.0, 0.0, 0.0, 1.0, 1.0 / c2],
            [-1.0 / rc, 0.0, 0.0, 0.0, 0.0, 1.0 / rc],
            [0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        ]
    )
    Rinv = np.array(
        [
            [0.0, -0.5 * rc, 0.0, 0.5, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, -1.0 / c2, 0.0, 0.0],
            [0.0, 0.5 * rc, 0.0, 0.5, 0.0, 0.0],
        ]
    )
    return LcdBasis(rho=rho_h, u=u_h, p=p_h, gamma=g_h, pi_inf=pi_h, c=c, R=R, Rinv=Rinv)


def lcd_basis_2d_y(Vl, Vr) -> LcdBasis:
    """y-direction eigenbasis: the x-family with the velocity roles swapped."""
    swap = [0, 2, 1, 3, 4, 5]
    basis = lcd_basis_2d_x(np.asarray(Vl)[swap], np.asarray(Vr)[swap])
    R = basis.R[swap, :]
    Rinv = basis.Rinv[:, swap]
    return LcdBasis(
        rho=basis.rho, u=basis.u, p=basis.p, gamma=basis.gamma,
        pi_inf=basis.pi_inf, c=basis.c, R=R, Rinv=Rinv,
    )


def characteristic_interface_values(Vwin: np.ndarray, direction: str = "x"):
    """Interpolated one-sided primitive values from a (ncomp, 6) window.

    The window columns are six consecutive cells; the interface sits between
    columns 2 and 3.  Falls back to componentwise interpolation when the
    averaged sound speed is undefined.
    """
    Vwin = np.asarray(Vwin, dtype=np.float64)
    ncomp = Vwin.shape[0]
    try:
        if ncomp == 5:
            basis = lcd_basis_1d(Vwin[:, 2], Vwin[:, 3])
        elif direction == "x":
            basis = lcd_basis_2d_x(Vwin[:, 2], Vwin[:, 3])
        else:
            basis = lcd_basis_2d_y(Vwin[:, 2], Vwin[:, 3])
        R, Rinv = basis.R, basis.Rinv
    except ValueError:
        R = Rinv = np.eye(ncomp)
    W = Rinv @ Vwin
    Wm = np.empty(ncomp)
    Wp = np.empty(ncomp)
    for c in range(ncomp):
        Wm[c], Wp[c] = aiweno_interpolate(W[c])
    return R @ Wm, R @ Wp


def ho_corrections(flux_seq: np.ndarray, h: float):
    """Second and fourth flux-derivative approximations at the center interface.

    ``flux_seq`` holds five consecutive interface fluxes (last axis); returns
    (K_xx, K_xxxx) at the middle one.
    """
    K = np.asarray(flux_seq, dtype=np.float64)
    if K.shape[-1] != 5:
        raise ValueError("need exactly five consecutive interface fluxes")
    k0, k1, k2, k3, k4 = (K[..., i] for i in range(5))
    kxx = (-k0 + 16.0 * k1 - 30.0 * k2 + 16.0 * k3 - k4) / (12.0 * h * h)
    kxxxx = (k0 - 4.0 * k1 + 6.0 * k2 - 4.0 * k3 + k4) / h**4
    return kxx, kxxxx


def aweno_flux(flux_seq: np.ndarray, h: float):
    """Fifth-order flux H = K - (h^2/24) K_xx + (7 h^4/5760) K_xxxx.

    K_xx and K_xxxx are the plain derivative approximations of
    :func:`ho_corrections`, so the correction coefficients carry the even
    powers of h from the point-value/cell-average flux expansion.
    """
    K = np.asarray(flux_seq, dtype=np.float64)
    kxx, kxxxx = ho_corrections(K, h)
    return K[..., 2] - (h * h / 24.0) * kxx + (7.0 * h**4 / 5760.0) * kxxxx


def hybrid_cell_tags(mask: np.ndarray) -> np.ndarray:
    """Cells within four cells of a detected material interface.

    ``mask`` is the limiter-switch band (two cells each side of a detected
    pair); dilating it by two more cells gives the four-cell band of the
    positivity switch.
    """
    m = np.asarray(mask, dtype=bool)
    out = m.copy()
    for shift in (1, 2):
        out[shift:] |= m[:-shift]
        out[:-shift] |= m[shift:]
    return out


def hybrid_interface_switch(mask: np.ndarray, enabled: bool = True):
    """Per-cell scheme tags and per-interface low-order flags.

    Tagged cells use the second-order low-dissipation flux with the
    overcompressive limiter; an interface is low-order when either adjacent
    cell is tagged.  Returns (cell_tags, interface_low) with interface i
    sitting between cells i and i+1.
    """
    m = np.asarray(mask, dtype=bool)
    if not enabled:
        tags = np.zeros_like(m)
    else:
        tags = hybrid_cell_tags(m)
    iface_low = tags[:-1] | tags[1:]
    return tags, iface_low


__all__ = [
    "D_WEIGHTS",
    "LcdBasis",
    "aiweno_interpolate",
    "interpolation_weights",
    "lcd_basis_1d",
    "lcd_basis_2d_x",
    "lcd_basis_2d_y",
    "characteristic_interface_values",
    "ho_corrections",
    "aweno_flux",
    "hybrid_cell_tags",
    "hybrid_interface_switch",
]
