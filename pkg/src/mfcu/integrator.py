"""Semi-discrete right-hand side, boundary conditions, and time advancement.

Boundary fill happens before every right-hand-side evaluation; solid walls
mirror all components and negate the normal momentum, free boundaries copy
the first interior cell, periodic wraps.  Time stepping is forward Euler or
the three-stage strong-stability-preserving Runge-Kutta method with CFL or
externally fixed step size; steps are shortened to land exactly on requested
output times.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from mfcu.core import GHOST_WIDTH, Field1D, Field2D, FluidSpec
from mfcu.recon import interface_thresholds
from mfcu.sweeps import (
    SCHEME_CODES,
    max_speed_1d,
    max_speeds_2d,
    rhs_1d_kernel,
    sweep_2d_kernel,
)

Field = Union[Field1D, Field2D]


class SolverAbort(RuntimeError):
    """Raised when a stage produces an invalid state (scheme not positivity-proof)."""

    def __init__(self, t: float, step: int, stage: int, cell):
        super().__init__(
            f"invalid state at t={t:.6g}, step {step}, stage {stage}, cell {cell}"
        )
        self.t = t
        self.step = step
        self.stage = stage
        self.cell = cell


@dataclass
class SchemeConfig:
    """Scheme selection and the shared numerical parameters."""

    scheme: str = "ldpccu"
    cfl: float = 0.45
    theta: float = 1.3
    tau_interface: float = -0.5
    tau_smooth: float = 0.5
    eps0: float = 1.0e-12
    hybrid: Optional[bool] = None  # None = automatic
    fluids: Tuple[FluidSpec, ...] = ()
    adjacency: Optional[Tuple[Tuple[int, int], ...]] = None

    def __post_init__(self):
        if self.scheme not in SCHEME_CODES:
            raise ValueError(
                f"unknown scheme {self.scheme!r}; expected one of {sorted(SCHEME_CODES)}"
            )
        if not 0.0 < self.cfl < 1.0:
            raise ValueError(f"cfl must lie in (0, 1), got {self.cfl}")

    @property
    def ghost(self) -> int:
        return GHOST_WIDTH[self.scheme]

    @property
    def scheme_code(self) -> int:
        return SCHEME_CODES[self.scheme]

    def thresholds(self) -> np.ndarray:
        if len(self.fluids) < 2:
            return np.empty(0)
        return interface_thresholds(self.fluids, self.adjacency)

    def hybrid_active(self, dim: int) -> bool:
        """Hybrid defaults on for stiff multifluid 2-D runs of the 5th-order scheme."""
        if self.scheme != "aiweno":
            return False
        if self.hybrid is not None:
            return self.hybrid
        return dim == 2 and len(self.fluids) >= 2 and any(f.pi_inf > 0 for f in self.fluids)


def _fill_axis_1d(U: np.ndarray, g: int, n: int, side: str, tag: str, mom: int):
    if side == "left":
        if tag == "free":
            U[:, :g] = U[:, g : g + 1]
        elif tag == "solid_wall":
            U[:, :g] = U[:, g : 2 * g][:, ::-1]
            U[mom, :g] *= -1.0
        else:  # periodic
            U[:, :g] = U[:, n : n + g]
    else:
        if tag == "free":
            U[:, g + n :] = U[:, g + n - 1 : g + n]
        elif tag == "solid_wall":
            U[:, g + n :] = U[:, n : g + n][:, ::-1]
        else:
            U[:, g + n :] = U[:, g : 2 * g]
        if tag == "solid_wall":
            U[mom, g + n :] *= -1.0


def apply_boundary(field: Field) -> Field:
    """Fill ghost layers in place according to the grid's boundary tags."""
    if isinstance(field, Field1D):
        g, n = field.grid.ghost, field.grid.nx
        _fill_axis_1d(field.U, g, n, "left", field.grid.bc[0], mom=1)
        _fill_axis_1d(field.U, g, n, "right", field.grid.bc[1], mom=1)
        return field
    grid = field.grid
    g = grid.ghost
    U = field.U
    left, right, bottom, top = grid.bc
    # x-direction first, then y (corners take the y-extension of x-ghosts)
    nx = grid.nx
    if left == "free":
        U[:, :, :g] = U[:, :, g : g + 1]
    elif left == "solid_wall":
        U[:, :, :g] = U[:, :, g : 2 * g][:, :, ::-1]
        U[1, :, :g] *= -1.0
    else:
        U[:, :, :g] = U[:, :, nx : nx + g]
    if right == "free":
        U[:, :, g + nx :] = U[:, :, g + nx - 1 : g + nx]
    elif right == "solid_wall":
        U[:, :, g + nx :] = U[:, :, nx : g + nx][:, :, ::-1]
        U[1, :, g + nx :] *= -1.0
    else:
        U[:, :, g + nx :] = U[:, :, g : 2 * g]
    ny = grid.ny
    if bottom == "free":
        U[:, :g, :] = U[:, g : g + 1, :]
    elif bottom == "solid_wall":
        U[:, :g, :] = U[:, g : 2 * g, :][:, ::-1, :]
        U[2, :g, :] *= -1.0
    else:
        U[:, :g, :] = U[:, ny : ny + g, :]
    if top == "free":
        U[:, g + ny :, :] = U[:, g + ny - 1 : g + ny, :]
    elif top == "solid_wall":
        U[:, g + ny :, :] = U[:, ny : g + ny, :][:, ::-1, :]
        U[2, g + ny :, :] *= -1.0
    else:
        U[:, g + ny :, :] = U[:, g : 2 * g, :]
    return field


def cfl_timestep(field: Field, cfg: SchemeConfig, t_remaining: float = np.inf) -> float:
    """CFL-limited step, capped by the remaining time when waves are absent."""
    if isinstance(field, Field1D):
        s = max_speed_1d(field.U, field.grid.ghost, field.grid.nx)
        dt = cfg.cfl * field.grid.dx / s if s > 0.0 else np.inf
    else:
        sx, sy = max_speeds_2d(field.U, field.grid.ghost, field.grid.ny, field.grid.nx)
        denom = sx / field.grid.dx + sy / field.grid.dy
        dt = cfg.cfl / denom if denom > 0.0 else np.inf
    return min(dt, t_remaining)


def rhs(field: Field, cfg: SchemeConfig) -> np.ndarray:
    """Semi-discrete time derivative of the interior cells (ghosts must be filled)."""
    th = cfg.thresholds()
    if isinstance(field, Field1D):
        return rhs_1d_kernel(
            field.U,
            field.grid.ghost,
            field.grid.nx,
            field.grid.dx,
            th,
            cfg.theta,
            cfg.tau_interface,
            cfg.tau_smooth,
            cfg.eps0,
            cfg.scheme_code,
            cfg.hybrid_active(1),
        )
    grid = field.grid
    g = grid.ghost
    U = field.U
    hybrid = cfg.hybrid_active(2)
    args = (th, cfg.theta, cfg.tau_interface, cfg.tau_smooth, cfg.eps0, cfg.scheme_code, hybrid)
    Hx = sweep_2d_kernel(U[0], U[1], U[3], U[4], U[5], U[2], g, grid.ny, grid.nx, grid.dx, *args)
    rT = np.ascontiguousarray(U[0].T)
    mlT = np.ascontiguousarray(U[2].T)
    enT = np.ascontiguousarray(U[3].T)
    gT = np.ascontiguousarray(U[4].T)
    pT = np.ascontiguousarray(U[5].T)
    mtT = np.ascontiguousarray(U[1].T)
    Hy = sweep_2d_kernel(rT, mlT, enT, gT, pT, mtT, g, grid.nx, grid.ny, grid.dy, *args)
    dHx = (Hx[:, :, 1:] - Hx[:, :, :-1]) / grid.dx
    dHy = (Hy[:, :, 1:] - Hy[:, :, :-1]) / grid.dy
    out = np.empty((6, grid.ny, grid.nx))
    # line order (rho, m_long, E, Gamma, Pi, m_tran) back to storage order
    out[0] = -(dHx[0] + dHy[0].T)
    out[1] = -(dHx[1] + dHy[5].T)
    out[2] = -(dHx[5] + dHy[1].T)
    out[3] = -(dHx[2] + dHy[2].T)
    out[4] = -(dHx[3] + dHy[3].T)
    out[5] = -(dHx[4] + dHy[4].T)
    return out


def _check_valid(field: Field, t: float, step: int, stage: int):
    bad = field.first_invalid_cell()
    if bad is not None:
        raise SolverAbort(t, step, stage, bad)


def forward_euler_step(
    field: Field, dt: float, cfg: SchemeConfig, t: float = 0.0, step: int = 0
) -> Field:
    """One forward-Euler step; aborts on an invalid updated state."""
    apply_boundary(field)
    out = field.copy()
    out.interior()[...] = field.interior() + dt * rhs(field, cfg)
    _check_valid(out, t, step, 1)
    return out


def ssprk3_step(
    field: Field, dt: float, cfg: SchemeConfig, t: float = 0.0, step: int = 0
) -> Field:
    """Three-stage third-order strong-stability-preserving Runge-Kutta step."""
    apply_boundary(field)
    u0 = field.interior().copy()
    s1 = field.copy()
    s1.interior()[...] = u0 + dt * rhs(field, cfg)
    _check_valid(s1, t, step, 1)
    apply_boundary(s1)
    s2 = s1.copy()
    s2.interior()[...] = 0.75 * u0 + 0.25 * (s1.interior() + dt * rhs(s1, cfg))
    _check_valid(s2, t, step, 2)
    apply_boundary(s2)
    out = s2.copy()
    out.interior()[...] = (u0 + 2.0 * (s2.interior() + dt * rhs(s2, cfg))) / 3.0
    _check_valid(out, t, step, 3)
    return out


@dataclass
class AdvanceStats:
    steps: int = 0
    t: float = 0.0
    dt_history: list = dc_field(default_factory=list)


def advance(
    field: Field,
    t_final: float,
    cfg: SchemeConfig,
    t0: float = 0.0,
    fixed_dt: Optional[float] = None,
    snapshot_times: Sequence[float] = (),
    on_snapshot: Optional[Callable[[Field, float], None]] = None,
    stepper: Callable = ssprk3_step,
    max_steps: Optional[int] = None,
) -> Tuple[Field, AdvanceStats]:
    """March to t_final, landing exactly on each requested snapshot time."""
    requested = {float(ts) for ts in snapshot_times if t0 < ts <= t_final}
    events = sorted(requested | {float(t_final)})
    stats = AdvanceStats(t=t0)
    t = t0
    eps_t = 1e-12 * max(1.0, abs(t_final))
    for t_event in events:
        while t < t_event - eps_t:
            dt = fixed_dt if fixed_dt is not None else cfl_timestep(field, cfg, t_event - t)
            dt = min(dt, t_event - t)
            field = stepper(field, dt, cfg, t=t, step=stats.steps)
            t += dt
            stats.steps += 1
            if max_steps is not None and stats.steps >= max_steps:
                stats.t = t
                return field, stats
        t = t_event
        if on_snapshot is not None and t_event in requested:
            on_snapshot(field, t_event)
    stats.t = t
    return field, stats
