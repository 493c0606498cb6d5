"""Global fluxes: physical flux minus the accumulated nonconservative integral.

The nonconservative products act only on the advected EOS pair, so the
accumulated integral R (S in the y-direction) has nonzero entries in the
Gamma and Pi components alone.  Interface terms use a straight-segment path,
cell terms the trapezoidal rule on the linear reconstruction; both reduce to
midpoint-of-endpoints times velocity jump.
"""

from __future__ import annotations

from typing import Tuple

import numpy as np
from numba import njit

from mfcu.core import ConservedState, PrimitiveState, primitive_from_conserved, sound_speed
from mfcu.scalars import local_speeds_pair


def physical_flux_x(U: ConservedState) -> np.ndarray:
    """1-D: (rho u, rho u^2 + p, u(E+p), u Gamma, u Pi); 2-D adds rho u v."""
    V = primitive_from_conserved(U)
    if U.mom_y is None:
        return np.array(
            [
                U.rho * V.u,
                U.rho * V.u**2 + V.p,
                V.u * (U.energy + V.p),
                V.u * U.Gamma,
                V.u * U.Pi,
            ]
        )
    return np.array(
        [
            U.rho * V.u,
            U.rho * V.u**2 + V.p,
            U.rho * V.u * V.v,
            V.u * (U.energy + V.p),
            V.u * U.Gamma,
            V.u * U.Pi,
        ]
    )


def physical_flux_y(U: ConservedState) -> np.ndarray:
    """y-direction flux (rho v, rho u v, rho v^2 + p, v(E+p), v Gamma, v Pi)."""
    if U.mom_y is None:
        raise ValueError("y-flux requires a 2-D state")
    V = primitive_from_conserved(U)
    return np.array(
        [
            U.rho * V.v,
            U.rho * V.u * V.v,
            U.rho * V.v**2 + V.p,
            V.v * (U.energy + V.p),
            V.v * U.Gamma,
            V.v * U.Pi,
        ]
    )


def cell_source(u_minus_r, u_plus_l, g_minus_r, g_plus_l, p_minus_r, p_plus_l) -> np.ndarray:
    """Trapezoidal in-cell source between a cell's own two face values.

    Arguments are the cell's right-face minus values and left-face plus
    values of u, Gamma, Pi.  Only Gamma/Pi components are nonzero; returned
    in 1-D component order (rho, m, E, Gamma, Pi).
    """
    du = u_minus_r - u_plus_l
    bg = 0.5 * (g_minus_r + g_plus_l) * du
    bp = 0.5 * (p_minus_r + p_plus_l) * du
    return np.array([0.0, 0.0, 0.0, bg, bp])


def path_source(Um: ConservedState, Up: ConservedState) -> np.ndarray:
    """Straight-segment path integral across one interface jump."""
    vm = primitive_from_conserved(Um)
    vp = primitive_from_conserved(Up)
    du = vp.u - vm.u
    bg = 0.5 * (Up.Gamma + Um.Gamma) * du
    bp = 0.5 * (Up.Pi + Um.Pi) * du
    if Um.mom_y is None:
        return np.array([0.0, 0.0, 0.0, bg, bp])
    return np.array([0.0, 0.0, 0.0, 0.0, bg, bp])


@njit(cache=True)
def accumulate_sources(b_cell, b_path):
    """Prefix accumulation R-+ over one line of interfaces.

    b_path[i] belongs to interface i (i = 0..NI-1), b_cell[i] to the cell
    between interfaces i and i+1.  R-(0) = 0; R+(i) = R-(i) + b_path[i];
    R-(i+1) = R+(i) + b_cell[i].
    """
    ni = b_path.shape[0]
    Rm = np.empty(ni)
    Rp = np.empty(ni)
    acc = 0.0
    for i in range(ni):
        Rm[i] = acc
        acc = acc + b_path[i]
        Rp[i] = acc
        if i < ni - 1:
            acc = acc + b_cell[i]
    return Rm, Rp


def accumulate_global_flux(
    Fm: np.ndarray, Fp: np.ndarray, B_cell: np.ndarray, B_path: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Global fluxes K+- = F+- - R+- along one grid line.

    Shapes: Fm, Fp, B_path are (ncomp, NI); B_cell is (ncomp, NI-1). The
    recursion runs separately per component.
    """
    Fm = np.atleast_2d(np.asarray(Fm, dtype=np.float64))
    Fp = np.atleast_2d(np.asarray(Fp, dtype=np.float64))
    Bc = np.atleast_2d(np.asarray(B_cell, dtype=np.float64))
    Bp = np.atleast_2d(np.asarray(B_path, dtype=np.float64))
    Km = np.empty_like(Fm)
    Kp = np.empty_like(Fp)
    for c in range(Fm.shape[0]):
        Rm, Rp = accumulate_sources(np.ascontiguousarray(Bc[c]), np.ascontiguousarray(Bp[c]))
        Km[c] = Fm[c] - Rm
        Kp[c] = Fp[c] - Rp
    return Km, Kp


def local_speeds(Vm: PrimitiveState, Vp: PrimitiveState) -> Tuple[float, float]:
    """One-sided speed bounds (a- <= 0 <= a+) from the two face states."""
    cm = sound_speed(Vm)
    cp = sound_speed(Vp)
    return local_speeds_pair(Vm.u, cm, Vp.u, cp)


__all__ = [
    "physical_flux_x",
    "physical_flux_y",
    "cell_source",
    "path_source",
    "accumulate_sources",
    "accumulate_global_flux",
    "local_speeds",
]
