"""Piecewise-linear reconstruction of primitive variables.

Cells near detected material interfaces are limited with the overcompressive
two-parameter limiter (tau < 0); everywhere else the dissipative generalized
minmod variant (tau > 0) is used.  Both come from the same limiter function
``phi``; for tau = 1/2 the slope equals minmod(theta*db, (db+df)/2, theta*df)/h.

Line data is stored as (ncomp, M) arrays with component order
(rho, u, p, Gamma, Pi[, transverse velocity]); the first five indices are
shared between 1-D and 2-D sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from numba import njit

from mfcu.core import FluidSpec
from mfcu.scalars import minmod2, minmod3, phi_sbm, slope_limited

THETA_DEFAULT = 1.3
TAU_OVERCOMPRESSIVE = -0.5
TAU_DISSIPATIVE = 0.5

# Cells flagged around a detected interface pair (q, q+1): q-1 .. q+2.
SBM_REACH = (1, 2)
# Hybrid low-order band on the fifth-order path: q-3 .. q+4.
HYBRID_REACH = (3, 4)


@dataclass(frozen=True)
class LimiterParams:
    """Limiter parameters; tau < 0 sharpens interfaces, tau > 0 dissipates."""

    theta: float = THETA_DEFAULT
    tau: float = TAU_DISSIPATIVE

    def __post_init__(self):
        if not 1.0 <= self.theta <= 2.0:
            raise ValueError(f"theta must lie in [1, 2], got {self.theta}")
        if not -1.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must lie in [-1, 1], got {self.tau}")


def minmod(values: Sequence[float]) -> float:
    """min of all if all positive, max of all if all negative, else 0."""
    vals = np.asarray(values, dtype=np.float64)
    if vals.size == 0:
        raise ValueError("minmod of empty sequence")
    if np.all(vals > 0.0):
        return float(vals.min())
    if np.all(vals < 0.0):
        return float(vals.max())
    return 0.0


def sbm_phi(r: float, params: LimiterParams) -> float:
    """Limiter function phi_{theta,tau}(r); phi(r<=0) = 0."""
    return phi_sbm(float(r), params.theta, params.tau)


def interface_thresholds(
    fluids: Sequence[FluidSpec], adjacency: Optional[Sequence[Tuple[int, int]]] = None
) -> np.ndarray:
    """Gamma midpoints separating each (adjacent) fluid pair.

    ``adjacency`` lists index pairs of fluids that actually share interfaces;
    by default every unordered pair is used.  Fluids must have pairwise
    distinct Gamma for the sign test to be meaningful.
    """
    gammas = [f.Gamma for f in fluids]
    if len(fluids) >= 2:
        for i in range(len(gammas)):
            for j in range(i + 1, len(gammas)):
                if gammas[i] == gammas[j]:
                    raise ValueError("fluids must have pairwise distinct Gamma")
    if adjacency is None:
        adjacency = [
            (i, j) for i in range(len(fluids)) for j in range(i + 1, len(fluids))
        ]
    th = [0.5 * (gammas[a] + gammas[b]) for a, b in adjacency]
    return np.asarray(th, dtype=np.float64)


@njit(cache=True)
def pair_flags_into(gbar, thresholds, out):
    n = gbar.shape[0]
    for q in range(n - 1):
        out[q] = False
        for t in thresholds:
            if (gbar[q] - t) * (gbar[q + 1] - t) < 0.0:
                out[q] = True
                break
    return out


@njit(cache=True)
def pair_flags(gbar, thresholds):
    """True at pair q when any threshold separates cells q and q+1."""
    out = np.zeros(gbar.shape[0] - 1, dtype=np.bool_)
    return pair_flags_into(gbar, thresholds, out)


@njit(cache=True)
def expand_pair_flags_into(pairs, reach_left, reach_right, out):
    n = pairs.shape[0] + 1
    for j in range(n):
        out[j] = False
    for q in range(pairs.shape[0]):
        if pairs[q]:
            lo = max(q - reach_left, 0)
            hi = min(q + reach_right, n - 1)
            for j in range(lo, hi + 1):
                out[j] = True
    return out


@njit(cache=True)
def expand_pair_flags(pairs, reach_left, reach_right):
    """Per-cell mask: cells q-reach_left .. q+reach_right for each flagged pair.

    Overlapping bands from nearby interfaces merge by union.
    """
    out = np.zeros(pairs.shape[0] + 1, dtype=np.bool_)
    return expand_pair_flags_into(pairs, reach_left, reach_right, out)


def detect_interfaces(
    gamma_field: np.ndarray,
    fluids: Sequence[FluidSpec],
    direction: str = "x",
    adjacency: Optional[Sequence[Tuple[int, int]]] = None,
) -> np.ndarray:
    """Per-cell mask of the limiter-switch band around material interfaces.

    1-D input gives a 1-D mask; for 2-D input the sweep runs along rows
    (direction 'x') or columns ('y') independently.
    """
    th = interface_thresholds(fluids, adjacency)
    gb = np.asarray(gamma_field, dtype=np.float64)
    if th.size == 0 or len(fluids) < 2:
        return np.zeros(gb.shape, dtype=bool)
    if gb.ndim == 1:
        return expand_pair_flags(pair_flags(gb, th), *SBM_REACH)
    if direction == "x":
        rows = [expand_pair_flags(pair_flags(gb[k], th), *SBM_REACH) for k in range(gb.shape[0])]
        return np.stack(rows)
    if direction == "y":
        cols = [
            expand_pair_flags(pair_flags(np.ascontiguousarray(gb[:, j]), th), *SBM_REACH)
            for j in range(gb.shape[1])
        ]
        return np.stack(cols, axis=1)
    raise ValueError(f"direction must be 'x' or 'y', got {direction!r}")


@njit(cache=True)
def slopes_line_into(V, mask, inv_h, theta, tau_interface, tau_smooth, S):
    ncomp, m = V.shape
    for c in range(ncomp):
        S[c, 0] = 0.0
        S[c, m - 1] = 0.0
    for j in range(1, m - 1):
        tau = tau_interface if mask[j] else tau_smooth
        for c in range(ncomp):
            S[c, j] = slope_limited(V[c, j - 1], V[c, j], V[c, j + 1], inv_h, theta, tau)
    return S


@njit(cache=True)
def slopes_line(V, mask, inv_h, theta, tau_interface, tau_smooth):
    """Componentwise limited slopes over one padded line.

    V has shape (ncomp, M); mask selects the overcompressive tau per cell.
    Boundary cells (no two-sided stencil) get slope 0.
    """
    S = np.zeros(V.shape)
    return slopes_line_into(V, mask, inv_h, theta, tau_interface, tau_smooth, S)


def slopes(
    Vbar: np.ndarray,
    mask: np.ndarray,
    h: float,
    theta: float = THETA_DEFAULT,
    tau_interface: float = TAU_OVERCOMPRESSIVE,
    tau_smooth: float = TAU_DISSIPATIVE,
) -> np.ndarray:
    """Limited slopes of line data (ncomp, M); see :func:`slopes_line`."""
    V = np.ascontiguousarray(np.atleast_2d(np.asarray(Vbar, dtype=np.float64)))
    out = slopes_line(V, np.ascontiguousarray(mask, dtype=np.bool_), 1.0 / h, theta, tau_interface, tau_smooth)
    return out if np.asarray(Vbar).ndim > 1 else out[0]


@njit(cache=True)
def face_is_valid(rho, p, gam, pi):
    return rho > 0.0 and gam > 0.0 and (1.0 + gam) * p + pi > 0.0


@njit(cache=True)
def rescale_invalid_slopes(V, S, half_h):
    """Shrink a cell's slope vector until both of its face states are valid.

    Tries full, half, quarter, then zero slope; zero always succeeds because
    cell data is valid.  Returns the number of rescaled cells.
    """
    ncomp, m = V.shape
    touched = 0
    for j in range(m):
        factor = 1.0
        for trial in range(4):
            rm = V[0, j] - half_h * factor * S[0, j]
            rp = V[0, j] + half_h * factor * S[0, j]
            pm = V[2, j] - half_h * factor * S[2, j]
            pp = V[2, j] + half_h * factor * S[2, j]
            gm = V[3, j] - half_h * factor * S[3, j]
            gp = V[3, j] + half_h * factor * S[3, j]
            im = V[4, j] - half_h * factor * S[4, j]
            ip = V[4, j] + half_h * factor * S[4, j]
            if face_is_valid(rm, pm, gm, im) and face_is_valid(rp, pp, gp, ip):
                break
            factor = 0.0 if trial == 2 else factor * 0.5
        if factor != 1.0:
            touched += 1
            for c in range(ncomp):
                S[c, j] = factor * S[c, j]
    return touched


@njit(cache=True)
def interface_values_line(V, S, half_h):
    """One-sided primitive values at the M-1 pair interfaces of a line.

    Vm[:, q] is the limit from cell q, Vp[:, q] the limit from cell q+1.
    """
    ncomp, m = V.shape
    Vm = np.empty((ncomp, m - 1))
    Vp = np.empty((ncomp, m - 1))
    for q in range(m - 1):
        for c in range(ncomp):
            Vm[c, q] = V[c, q] + half_h * S[c, q]
            Vp[c, q] = V[c, q + 1] - half_h * S[c, q + 1]
    return Vm, Vp


def interface_values(Vbar: np.ndarray, slopes_arr: np.ndarray, h: float):
    """Reconstructed primitive interface values with the positivity fallback.

    Returns (Vminus, Vplus) of shape (ncomp, M-1).  Slopes of cells whose
    face states would be invalid are rescaled in place (factors 1/2, 1/4, 0).
    """
    V = np.ascontiguousarray(np.atleast_2d(np.asarray(Vbar, dtype=np.float64)))
    S = np.ascontiguousarray(np.atleast_2d(np.asarray(slopes_arr, dtype=np.float64)))
    if V.shape[0] >= 5:
        rescale_invalid_slopes(V, S, 0.5 * h)
    return interface_values_line(V, S, 0.5 * h)


__all__ = [
    "LimiterParams",
    "minmod",
    "sbm_phi",
    "interface_thresholds",
    "detect_interfaces",
    "slopes",
    "interface_values",
    "pair_flags",
    "expand_pair_flags",
    "slopes_line",
    "interface_values_line",
    "rescale_invalid_slopes",
    "face_is_valid",
]
