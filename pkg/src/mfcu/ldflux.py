"""Interface numerical fluxes: central-upwind base, anti-diffusion, guards.

Two anti-diffusion rules share the intermediate state U*:

* the projection-derived rule (density/EOS-pair channels plus a reconstructed
  energy weight) used by the low-dissipation schemes, and
* the componentwise minmod rule used by the baseline scheme.

Component order matches the field storage: (rho, m_x[, m_y], E, Gamma, Pi);
primitive vectors are (rho, u[, v], p, Gamma, Pi).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from mfcu.scalars import (
    cu_component,
    minmod2,
    q_energy_transverse,
    q_energy_weight,
    star_component,
)

EPS0_DEFAULT = 1.0e-12


@dataclass
class InterfaceFluxInput:
    """One interface's one-sided data: conserved, primitive, global flux, speeds."""

    Um: np.ndarray
    Up: np.ndarray
    Vm: np.ndarray
    Vp: np.ndarray
    Km: np.ndarray
    Kp: np.ndarray
    am: float
    ap: float

    @property
    def two_d(self) -> bool:
        return len(self.Um) == 6


@dataclass
class IntermediateState:
    """Projection average U* and its velocity; v* only for 2-D y-family use."""

    Ustar: np.ndarray
    ustar: float


def cu_flux(inp: InterfaceFluxInput) -> np.ndarray:
    """Central-upwind flux (a+ K- - a- K+)/(a+ - a-) + a+a-/(a+-a-) (U+ - U-)."""
    inv_da = 1.0 / (inp.ap - inp.am)
    out = np.empty_like(np.asarray(inp.Km, dtype=np.float64))
    for c in range(out.shape[0]):
        out[c] = cu_component(inp.am, inp.ap, inv_da, inp.Km[c], inp.Kp[c], inp.Um[c], inp.Up[c])
    return out


def intermediate_state(inp: InterfaceFluxInput, longitudinal: int = 1) -> IntermediateState:
    """U* = (a+ U+ - a- U- - (K+ - K-)) / (a+ - a-); u* = m*/rho*.

    ``longitudinal`` selects the momentum component whose velocity u* is
    formed (1 for the x-family, 2 for the y-family in 2-D).
    """
    inv_da = 1.0 / (inp.ap - inp.am)
    Us = np.empty_like(np.asarray(inp.Um, dtype=np.float64))
    for c in range(Us.shape[0]):
        Us[c] = star_component(inp.am, inp.ap, inv_da, inp.Km[c], inp.Kp[c], inp.Um[c], inp.Up[c])
    ustar = Us[longitudinal] / Us[0] if Us[0] > 0.0 else np.nan
    return IntermediateState(Ustar=Us, ustar=ustar)


def ld_antidiffusion_1d(inp: InterfaceFluxInput, star: IntermediateState) -> np.ndarray:
    """Anti-diffusion of the 1-D low-dissipation flux.

    q = q_rho (1, u*, u*^2/2, 0, 0) + q_G (0, 0, w, 1, 0) + q_P (0, 0, 1, 0, 1)
    with w the reconstructed pressure-like energy weight; q vanishes when the
    intermediate state is unusable (rho* <= 0 or Gamma* <= 0).
    """
    rho_s, m_s, E_s, g_s, pi_s = star.Ustar
    if rho_s <= 0.0 or g_s <= 0.0:
        return np.zeros(5)
    u_s = star.ustar
    q_rho = minmod2(-inp.am * (rho_s - inp.Um[0]), inp.ap * (inp.Up[0] - rho_s))
    q_g = minmod2(-inp.am * (g_s - inp.Um[3]), inp.ap * (inp.Up[3] - g_s))
    q_pi = minmod2(-inp.am * (pi_s - inp.Um[4]), inp.ap * (inp.Up[4] - pi_s))
    w = q_energy_weight(E_s, m_s, rho_s, pi_s, g_s)
    return np.array(
        [
            q_rho,
            q_rho * u_s,
            q_rho * (u_s * u_s * 0.5) + q_g * w + q_pi,
            q_g,
            q_pi,
        ]
    )


def kl_antidiffusion(inp: InterfaceFluxInput, star: IntermediateState) -> np.ndarray:
    """Componentwise minmod anti-diffusion of the baseline scheme."""
    coef = -inp.ap * inp.am / (inp.ap - inp.am)
    out = np.empty_like(star.Ustar)
    for c in range(out.shape[0]):
        out[c] = coef * minmod2(star.Ustar[c] - inp.Um[c], inp.Up[c] - star.Ustar[c])
    return out


def ld_flux(inp: InterfaceFluxInput, q: np.ndarray) -> np.ndarray:
    """Low-dissipation flux: central-upwind flux plus anti-diffusion."""
    return cu_flux(inp) + q


def ld_antidiffusion_2d_x(
    inp: InterfaceFluxInput, star: IntermediateState, eps0: float = EPS0_DEFAULT
) -> np.ndarray:
    """x-family 2-D anti-diffusion (rho, u* q_rho, q_mv, q_E, q_G, q_P).

    The energy entry carries the transverse-momentum kinetic correction with
    shifted density/momentum arguments.  Falls back to q = 0 when rho* <= 0,
    Gamma* <= 0, or a shifted density is nonpositive.
    """
    rho_s, mx_s, my_s, E_s, g_s, pi_s = star.Ustar
    if rho_s <= 0.0 or g_s <= 0.0:
        return np.zeros(6)
    am, ap = inp.am, inp.ap
    inv_da = 1.0 / (ap - am)
    u_s = star.ustar
    q_rho = minmod2(-am * (rho_s - inp.Um[0]), ap * (inp.Up[0] - rho_s))
    q_mt = minmod2(-am * (my_s - inp.Um[2]), ap * (inp.Up[2] - my_s))
    q_g = minmod2(-am * (g_s - inp.Um[4]), ap * (inp.Up[4] - g_s))
    q_pi = minmod2(-am * (pi_s - inp.Um[5]), ap * (inp.Up[5] - pi_s))
    w = q_energy_weight(E_s, mx_s, rho_s, pi_s, g_s)
    q_e = q_rho * (u_s * u_s * 0.5) + q_g * w + q_pi
    if ap >= eps0 and -am >= eps0:
        if rho_s + q_rho / ap <= 0.0 or rho_s + q_rho / am <= 0.0:
            return np.zeros(6)
        q_e = q_energy_transverse(am, ap, inv_da, rho_s, my_s, q_rho, q_mt, q_g, g_s) + q_e
    return np.array([q_rho, q_rho * u_s, q_mt, q_e, q_g, q_pi])


_SWAP_UV = np.array([0, 2, 1, 3, 4, 5])


def ld_antidiffusion_2d_y(
    inp: InterfaceFluxInput, star: IntermediateState, eps0: float = EPS0_DEFAULT
) -> np.ndarray:
    """y-family anti-diffusion: the x-family with the velocity roles swapped."""
    swapped = InterfaceFluxInput(
        Um=np.asarray(inp.Um)[_SWAP_UV],
        Up=np.asarray(inp.Up)[_SWAP_UV],
        Vm=np.asarray(inp.Vm)[_SWAP_UV],
        Vp=np.asarray(inp.Vp)[_SWAP_UV],
        Km=np.asarray(inp.Km)[_SWAP_UV],
        Kp=np.asarray(inp.Kp)[_SWAP_UV],
        am=inp.am,
        ap=inp.ap,
    )
    star_swapped = IntermediateState(Ustar=star.Ustar[_SWAP_UV], ustar=star.Ustar[2] / star.Ustar[0])
    return ld_antidiffusion_2d_x(swapped, star_swapped, eps0)[_SWAP_UV]


def desingularize(
    inp: InterfaceFluxInput, eps0: float = EPS0_DEFAULT, two_d: bool = False
) -> Tuple[Optional[np.ndarray], Optional[float]]:
    """Degenerate-speed flux overrides.

    Returns (full_flux, energy_flux): the first is the averaged global flux
    when both speeds are below eps0; the second (2-D only) is the one-sided
    energy flux override when exactly one speed is below eps0.  Entries are
    None when the corresponding override does not apply.

    The one-sided override takes the vanishing-speed limit of the full
    central-upwind-plus-anti-diffusion formula, which is the upwind
    physical energy flux: all waves moving left (a+ ~ 0) leaves the right
    state's flux, all waves moving right (a- ~ 0) the left state's.
    """
    both_tiny = inp.ap < eps0 and inp.am > -eps0
    if both_tiny:
        return 0.5 * (np.asarray(inp.Km) + np.asarray(inp.Kp)), None
    if not two_d:
        return None, None
    eidx = 3
    u_m, p_m = inp.Vm[1], inp.Vm[3]
    u_p, p_p = inp.Vp[1], inp.Vp[3]
    if inp.ap < eps0 and inp.am < -eps0:
        return None, u_p * (inp.Up[eidx] + p_p)
    if inp.am > -eps0 and inp.ap > eps0:
        return None, u_m * (inp.Um[eidx] + p_m)
    return None, None


__all__ = [
    "EPS0_DEFAULT",
    "InterfaceFluxInput",
    "IntermediateState",
    "cu_flux",
    "intermediate_state",
    "ld_antidiffusion_1d",
    "kl_antidiffusion",
    "ld_flux",
    "ld_antidiffusion_2d_x",
    "ld_antidiffusion_2d_y",
    "desingularize",
]
