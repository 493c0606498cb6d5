"""Grids, field storage, state conversions, and the stiffened-gas EOS.

State vectors use an advected EOS pair ``Gamma = 1/(gamma-1)`` and
``Pi = gamma*pi_inf/(gamma-1)``, one pair per fluid, so that a single set of
flux formulas covers ideal gases (``pi_inf = 0``) and stiffened liquids.

Component ordering of the conserved storage:

* 1-D: ``(rho, rho*u, E, Gamma, Pi)``
* 2-D: ``(rho, rho*u, rho*v, E, Gamma, Pi)``
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

# 1-D component indices
RHO, MX, E1, G1, P1 = 0, 1, 2, 3, 4
NCOMP_1D = 5
# 2-D component indices
MY2, E2, G2, P2 = 2, 3, 4, 5
NCOMP_2D = 6

BC_TAGS = ("free", "solid_wall", "periodic")

# Ghost layers per scheme: 2 covers the piecewise-linear stencil, 5 covers the
# six-point interpolation window of every flux entering the high-order
# correction stencil (interfaces two cells beyond the domain edge).
GHOST_WIDTH = {"pccu": 2, "ldpccu": 2, "aiweno": 5}


class InvalidFluidError(ValueError):
    """Raised for EOS parameters outside the admissible range."""


class InvalidStateError(ValueError):
    """Raised when a state has nonpositive density/Gamma or imaginary sound speed."""

    def __init__(self, msg: str, index=None):
        super().__init__(msg if index is None else f"{msg} at cell {index}")
        self.index = index


@dataclass(frozen=True)
class FluidSpec:
    """Stiffened-gas fluid: specific heat ratio and stiffness parameter."""

    gamma: float
    pi_inf: float = 0.0

    def __post_init__(self):
        if not self.gamma > 1.0:
            raise InvalidFluidError(f"gamma must exceed 1, got {self.gamma}")
        if self.pi_inf < 0.0:
            raise InvalidFluidError(f"pi_inf must be nonnegative, got {self.pi_inf}")

    @property
    def Gamma(self) -> float:
        return 1.0 / (self.gamma - 1.0)

    @property
    def Pi(self) -> float:
        return self.gamma * self.pi_inf / (self.gamma - 1.0)


def gamma_pi_from_eos(spec: FluidSpec) -> Tuple[float, float]:
    """Advected state pair (Gamma, Pi) of a fluid."""
    return spec.Gamma, spec.Pi


@dataclass
class PrimitiveState:
    """Pointwise primitive state (rho, u[, v], p, Gamma, Pi).

    Fields may hold floats or broadcastable numpy arrays; ``v`` is None in 1-D.
    """

    rho: float
    u: float
    p: float
    Gamma: float
    Pi: float
    v: Optional[float] = None


@dataclass
class ConservedState:
    """Pointwise conserved state (rho, rho*u[, rho*v], E, Gamma, Pi)."""

    rho: float
    mom_x: float
    energy: float
    Gamma: float
    Pi: float
    mom_y: Optional[float] = None


def conserved_from_primitive(V: PrimitiveState) -> ConservedState:
    """Total energy from the EOS: E = Gamma*p + rho*|u|^2/2 + Pi."""
    ke = V.u * V.u if V.v is None else V.u * V.u + V.v * V.v
    energy = V.Gamma * V.p + 0.5 * V.rho * ke + V.Pi
    mom_y = None if V.v is None else V.rho * V.v
    return ConservedState(
        rho=V.rho, mom_x=V.rho * V.u, energy=energy, Gamma=V.Gamma, Pi=V.Pi, mom_y=mom_y
    )


def primitive_from_conserved(U: ConservedState, index=None) -> PrimitiveState:
    """Invert the EOS; raises InvalidStateError for rho <= 0 or Gamma <= 0."""
    if np.any(U.rho <= 0.0):
        raise InvalidStateError(f"nonpositive density {U.rho}", index)
    if np.any(U.Gamma <= 0.0):
        raise InvalidStateError(f"nonpositive Gamma {U.Gamma}", index)
    u = U.mom_x / U.rho
    ke = U.mom_x * U.mom_x
    v = None
    if U.mom_y is not None:
        v = U.mom_y / U.rho
        ke = ke + U.mom_y * U.mom_y
    p = (U.energy - 0.5 * ke / U.rho - U.Pi) / U.Gamma
    return PrimitiveState(rho=U.rho, u=u, p=p, Gamma=U.Gamma, Pi=U.Pi, v=v)


def sound_speed(V: PrimitiveState):
    """c = sqrt(((1+Gamma)p + Pi) / (Gamma rho)); the stiffened-gas speed."""
    radicand = ((1.0 + V.Gamma) * V.p + V.Pi) / (V.Gamma * V.rho)
    if np.any(radicand <= 0.0) or np.any(V.rho <= 0.0):
        raise InvalidStateError(f"nonpositive sound-speed radicand {radicand}")
    return np.sqrt(radicand)


def _check_bc(tag: str) -> str:
    if tag not in BC_TAGS:
        raise ValueError(f"unknown boundary tag {tag!r}; expected one of {BC_TAGS}")
    return tag


@dataclass(frozen=True)
class Grid1D:
    """Uniform cell-centered 1-D mesh with ghost layers."""

    x0: float
    x1: float
    nx: int
    ghost: int
    bc: Tuple[str, str] = ("free", "free")  # (left, right)

    def __post_init__(self):
        if self.nx <= 0 or self.x1 <= self.x0 or self.ghost < 2:
            raise ValueError("grid needs nx > 0, x1 > x0, ghost >= 2")
        for tag in self.bc:
            _check_bc(tag)

    @property
    def dx(self) -> float:
        return (self.x1 - self.x0) / self.nx

    @property
    def ntot(self) -> int:
        return self.nx + 2 * self.ghost

    def centers(self, with_ghosts: bool = False) -> np.ndarray:
        lo = -self.ghost if with_ghosts else 0
        hi = self.nx + self.ghost if with_ghosts else self.nx
        return self.x0 + (np.arange(lo, hi) + 0.5) * self.dx


@dataclass(frozen=True)
class Grid2D:
    """Uniform cell-centered 2-D mesh with ghost layers."""

    x0: float
    x1: float
    y0: float
    y1: float
    nx: int
    ny: int
    ghost: int
    bc: Tuple[str, str, str, str] = ("free", "free", "free", "free")  # l, r, b, t

    def __post_init__(self):
        if self.nx <= 0 or self.ny <= 0 or self.x1 <= self.x0 or self.y1 <= self.y0:
            raise ValueError("grid needs positive extents")
        if self.ghost < 2:
            raise ValueError("ghost width must be >= 2")
        for tag in self.bc:
            _check_bc(tag)

    @property
    def dx(self) -> float:
        return (self.x1 - self.x0) / self.nx

    @property
    def dy(self) -> float:
        return (self.y1 - self.y0) / self.ny

    def xcenters(self, with_ghosts: bool = False) -> np.ndarray:
        lo = -self.ghost if with_ghosts else 0
        hi = self.nx + self.ghost if with_ghosts else self.nx
        return self.x0 + (np.arange(lo, hi) + 0.5) * self.dx

    def ycenters(self, with_ghosts: bool = False) -> np.ndarray:
        lo = -self.ghost if with_ghosts else 0
        hi = self.ny + self.ghost if with_ghosts else self.ny
        return self.y0 + (np.arange(lo, hi) + 0.5) * self.dy


class Field1D:
    """Conserved components over interior + ghost cells, structure-of-arrays."""

    def __init__(self, grid: Grid1D, U: Optional[np.ndarray] = None):
        self.grid = grid
        if U is None:
            U = np.zeros((NCOMP_1D, grid.ntot))
        if U.shape != (NCOMP_1D, grid.ntot):
            raise ValueError(f"bad field shape {U.shape}")
        self.U = np.ascontiguousarray(U, dtype=np.float64)

    def copy(self) -> "Field1D":
        return Field1D(self.grid, self.U.copy())

    def interior(self) -> np.ndarray:
        g = self.grid.ghost
        return self.U[:, g : g + self.grid.nx]

    def primitive_interior(self):
        """(rho, u, p, Gamma, Pi) arrays over interior cells."""
        rho, mx, en, gam, pi = self.interior()
        u = mx / rho
        p = (en - 0.5 * (mx * mx) / rho - pi) / gam
        return rho, u, p, gam, pi

    def first_invalid_cell(self) -> Optional[int]:
        rho, mx, en, gam, pi = self.interior()
        p = (en - 0.5 * (mx * mx) / rho - pi) / gam
        bad = ~(
            (rho > 0.0)
            & (gam > 0.0)
            & ((1.0 + gam) * p + pi > 0.0)
            & np.isfinite(rho)
            & np.isfinite(mx)
            & np.isfinite(en)
        )
        idx = np.flatnonzero(bad)
        return None if idx.size == 0 else int(idx[0])


class Field2D:
    """2-D conserved components, shape (6, ny + 2*ghost, nx + 2*ghost)."""

    def __init__(self, grid: Grid2D, U: Optional[np.ndarray] = None):
        self.grid = grid
        shape = (NCOMP_2D, grid.ny + 2 * grid.ghost, grid.nx + 2 * grid.ghost)
        if U is None:
            U = np.zeros(shape)
        if U.shape != shape:
            raise ValueError(f"bad field shape {U.shape}")
        self.U = np.ascontiguousarray(U, dtype=np.float64)

    def copy(self) -> "Field2D":
        return Field2D(self.grid, self.U.copy())

    def interior(self) -> np.ndarray:
        g = self.grid.ghost
        return self.U[:, g : g + self.grid.ny, g : g + self.grid.nx]

    def primitive_interior(self):
        """(rho, u, v, p, Gamma, Pi) arrays over interior cells."""
        rho, mx, my, en, gam, pi = self.interior()
        u = mx / rho
        v = my / rho
        p = (en - 0.5 * (mx * mx + my * my) / rho - pi) / gam
        return rho, u, v, p, gam, pi

    def first_invalid_cell(self) -> Optional[Tuple[int, int]]:
        rho, mx, my, en, gam, pi = self.interior()
        p = (en - 0.5 * (mx * mx + my * my) / rho - pi) / gam
        bad = ~(
            (rho > 0.0)
            & (gam > 0.0)
            & ((1.0 + gam) * p + pi > 0.0)
            & np.isfinite(rho)
            & np.isfinite(mx)
            & np.isfinite(my)
            & np.isfinite(en)
        )
        idx = np.argwhere(bad)
        return None if idx.size == 0 else (int(idx[0, 0]), int(idx[0, 1]))
