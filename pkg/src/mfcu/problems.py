"""Benchmark problem catalog: initial data, domains, boundaries, schedules.

Seven shock/bubble interaction problems (three 1-D, four 2-D) plus a smooth
periodic advection case used by the convergence harness.  Regions are listed
in priority order and evaluated at cell centers, first match wins, so the
partition is exact regardless of boundary ties.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from mfcu.core import Field1D, Field2D, FluidSpec, Grid1D, Grid2D

PROBLEM_NAMES = ("ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex7")


@dataclass(frozen=True)
class Region:
    """A region predicate with its primitive state and fluid.

    kinds: 'interval' (a < x < b), 'halfspace' (axis cmp value),
    'disk' ((x-cx)^2 + (y-cy)^2 < r^2), 'else' (remainder).
    """

    kind: str
    params: Tuple[float, ...]
    rho: float
    u: float
    p: float
    fluid: FluidSpec
    v: float = 0.0

    def contains(self, x: np.ndarray, y: Optional[np.ndarray] = None) -> np.ndarray:
        if self.kind == "else":
            return np.ones_like(x, dtype=bool)
        if self.kind == "interval":
            a, b = self.params
            return (x > a) & (x < b)
        if self.kind == "halfspace":
            axis, op, c = self.params
            coord = x if axis == "x" else y
            return coord > c if op == ">" else coord < c
        if self.kind == "disk":
            cx, cy, r = self.params
            return (x - cx) ** 2 + (y - cy) ** 2 < r * r
        raise ValueError(f"unknown region kind {self.kind!r}")


@dataclass(frozen=True)
class ProblemSpec:
    name: str
    dim: int
    domain: Tuple[float, ...]  # (x0, x1[, y0, y1])
    nx: int
    ny: int
    nx_reference: int
    bc: Tuple[str, ...]
    t_final: float
    snapshots: Tuple[float, ...]
    regions: Tuple[Region, ...] = ()
    fluids: Tuple[FluidSpec, ...] = ()
    adjacency: Optional[Tuple[Tuple[int, int], ...]] = None
    hybrid_default: bool = False
    custom_init: Optional[Callable] = None


def smooth_density(x: np.ndarray, t: float = 0.0) -> np.ndarray:
    """Exact advected density of the smooth convergence problem."""
    return 1.0 + 0.5 * np.sin(np.pi * (x - t))


def _smooth_init(x: np.ndarray):
    fl = FluidSpec(1.4, 0.0)
    one = np.ones_like(x)
    return smooth_density(x), one, one, fl.Gamma * one, fl.Pi * one


_HELIUM = FluidSpec(5.0 / 3.0, 0.0)
_AIR = FluidSpec(1.4, 0.0)
_R22 = FluidSpec(1.249, 0.0)
_WATER_SOFT = FluidSpec(4.4, 6000.0)
_WATER_STIFF = FluidSpec(4.4, 6.0e8)
_EXPLOSIVE = FluidSpec(2.0, 0.0)
_WATER_715 = FluidSpec(7.15, 3309.0)

# Shock positions and bubble geometry of the 2-D bubble problems: the bubble
# (region A) is the radius-0.25 disk at the origin, the shocked state (region
# C) occupies x > 0.75, region B the remainder.  These constants are an
# explicit assumption, mirroring the 1-D setup of ex1.
BUBBLE2D_RADIUS = 0.25
BUBBLE2D_CENTER = (0.0, 0.0)
SHOCK2D_X = 0.75


def _catalog() -> dict:
    cat = {}
    cat["ex1"] = ProblemSpec(
        name="ex1",
        dim=1,
        domain=(-1.0, 2.0),
        nx=300,
        ny=1,
        nx_reference=6000,
        bc=("solid_wall", "solid_wall"),
        t_final=3.0,
        snapshots=(3.0,),
        regions=(
            Region("interval", (-0.25, 0.25), 13.1538, 0.0, 1.0, _HELIUM),
            Region("halfspace", ("x", ">", 0.75), 1.3333, -0.3535, 1.5, _AIR),
            Region("else", (), 1.0, 0.0, 1.0, _AIR),
        ),
        fluids=(_HELIUM, _AIR),
    )
    cat["ex2"] = ProblemSpec(
        name="ex2",
        dim=1,
        domain=(0.0, 18.0),
        nx=180,
        ny=1,
        nx_reference=7200,
        bc=("free", "free"),
        t_final=0.045,
        snapshots=(0.045,),
        regions=(
            Region("interval", (3.0, 9.0), 0.05, 0.0, 1.0, _AIR),
            Region("halfspace", ("x", ">", 11.4), 1.325, -68.525, 19153.0, _WATER_SOFT),
            Region("else", (), 1.0, 0.0, 1.0, _WATER_SOFT),
        ),
        fluids=(_AIR, _WATER_SOFT),
    )
    cat["ex3"] = ProblemSpec(
        name="ex3",
        dim=1,
        domain=(0.0, 1.0),
        nx=400,
        ny=1,
        nx_reference=6400,
        bc=("free", "free"),
        t_final=0.00025,
        snapshots=(0.00025,),
        regions=(
            Region("halfspace", ("x", "<", 0.7), 1000.0, 0.0, 1.0e9, _WATER_STIFF),
            Region("else", (), 50.0, 0.0, 1.0e5, _AIR),
        ),
        fluids=(_WATER_STIFF, _AIR),
    )
    bubble_2d_bc = ("free", "free", "solid_wall", "solid_wall")
    shock_region = Region(
        "halfspace", ("x", ">", SHOCK2D_X), 4.0 / 3.0, -0.3535, 1.5, _AIR, v=0.0
    )
    ambient_region = Region("else", (), 1.0, 0.0, 1.0, _AIR, v=0.0)
    cat["ex4"] = ProblemSpec(
        name="ex4",
        dim=2,
        domain=(-3.0, 1.0, -0.5, 0.5),
        nx=2000,
        ny=500,
        nx_reference=2000,
        bc=bubble_2d_bc,
        t_final=3.0,
        snapshots=(0.5, 1.0, 1.5, 2.0, 2.5, 3.0),
        regions=(
            Region("disk", (*BUBBLE2D_CENTER, BUBBLE2D_RADIUS), 4.0 / 29.0, 0.0, 1.0, _HELIUM),
            shock_region,
            ambient_region,
        ),
        fluids=(_HELIUM, _AIR),
    )
    cat["ex5"] = ProblemSpec(
        name="ex5",
        dim=2,
        domain=(-3.0, 1.0, -0.5, 0.5),
        nx=2000,
        ny=500,
        nx_reference=2000,
        bc=bubble_2d_bc,
        t_final=3.0,
        snapshots=(0.5, 1.0, 1.5, 2.0, 2.5, 3.0),
        regions=(
            Region("disk", (*BUBBLE2D_CENTER, BUBBLE2D_RADIUS), 3.1538, 0.0, 1.0, _R22),
            shock_region,
            ambient_region,
        ),
        fluids=(_R22, _AIR),
    )
    cat["ex6"] = ProblemSpec(
        name="ex6",
        dim=2,
        domain=(0.0, 10.0, 0.0, 6.0),
        nx=800,
        ny=480,
        nx_reference=800,
        bc=("free", "free", "solid_wall", "free"),
        t_final=0.02,
        snapshots=(0.008, 0.014, 0.02),
        regions=(
            Region("disk", (5.0, 2.0, 1.0), 1.27, 0.0, 8290.0, _EXPLOSIVE),
            Region("halfspace", ("y", ">", 4.0), 0.02, 0.0, 1.0, _AIR),
            Region("else", (), 1.0, 0.0, 1.0, _WATER_715),
        ),
        fluids=(_EXPLOSIVE, _AIR, _WATER_715),
        adjacency=((0, 2), (1, 2)),
        hybrid_default=True,
    )
    cat["ex7"] = ProblemSpec(
        name="ex7",
        dim=2,
        domain=(0.0, 12.0, 0.0, 12.0),
        nx=800,
        ny=800,
        nx_reference=800,
        bc=("free", "free", "solid_wall", "solid_wall"),
        t_final=0.045,
        snapshots=(0.0204, 0.0305, 0.0368, 0.0405, 0.045),
        regions=(
            Region("disk", (6.0, 6.0, 3.0), 0.0012, 0.0, 1.0, _AIR),
            Region("halfspace", ("x", ">", 11.4), 1.325, -68.525, 19153.0, _WATER_SOFT),
            Region("else", (), 1.0, 0.0, 1.0, _WATER_SOFT),
        ),
        fluids=(_AIR, _WATER_SOFT),
        hybrid_default=True,
    )
    cat["smooth"] = ProblemSpec(
        name="smooth",
        dim=1,
        domain=(-1.0, 1.0),
        nx=100,
        ny=1,
        nx_reference=800,
        bc=("periodic", "periodic"),
        t_final=0.5,
        snapshots=(0.5,),
        fluids=(_AIR,),
        custom_init=_smooth_init,
    )
    return cat


_CATALOG = _catalog()


def build_problem(name: str) -> ProblemSpec:
    """Look up a catalog entry; unknown names list the accepted ones."""
    try:
        return _CATALOG[name]
    except KeyError:
        known = ", ".join(list(PROBLEM_NAMES) + ["smooth"])
        raise KeyError(f"unknown problem {name!r}; known problems: {known}") from None


def make_grid(spec: ProblemSpec, ghost: int, nx: Optional[int] = None, ny: Optional[int] = None):
    if spec.dim == 1:
        return Grid1D(spec.domain[0], spec.domain[1], nx or spec.nx, ghost, spec.bc)
    return Grid2D(
        spec.domain[0], spec.domain[1], spec.domain[2], spec.domain[3],
        nx or spec.nx, ny or spec.ny, ghost, spec.bc,
    )


def initialize(spec: ProblemSpec, grid) -> Field1D | Field2D:
    """Point-sample the region states at cell centers and store conserved values."""
    if spec.dim == 1:
        x = grid.centers()
        if spec.custom_init is not None:
            rho, u, p, gam, pi = spec.custom_init(x)
        else:
            rho = np.empty_like(x)
            u = np.empty_like(x)
            p = np.empty_like(x)
            gam = np.empty_like(x)
            pi = np.empty_like(x)
            claimed = np.zeros_like(x, dtype=bool)
            for reg in spec.regions:
                sel = reg.contains(x) & ~claimed
                rho[sel] = reg.rho
                u[sel] = reg.u
                p[sel] = reg.p
                gam[sel] = reg.fluid.Gamma
                pi[sel] = reg.fluid.Pi
                claimed |= sel
            if not claimed.all():
                raise ValueError(f"regions of {spec.name} do not cover the domain")
        field = Field1D(grid)
        inter = field.interior()
        inter[0] = rho
        inter[1] = rho * u
        inter[2] = gam * p + 0.5 * rho * (u * u) + pi
        inter[3] = gam
        inter[4] = pi
        return field
    xs = grid.xcenters()
    ys = grid.ycenters()
    X, Y = np.meshgrid(xs, ys)
    rho = np.empty_like(X)
    u = np.empty_like(X)
    v = np.empty_like(X)
    p = np.empty_like(X)
    gam = np.empty_like(X)
    pi = np.empty_like(X)
    claimed = np.zeros_like(X, dtype=bool)
    for reg in spec.regions:
        sel = reg.contains(X, Y) & ~claimed
        rho[sel] = reg.rho
        u[sel] = reg.u
        v[sel] = reg.v
        p[sel] = reg.p
        gam[sel] = reg.fluid.Gamma
        pi[sel] = reg.fluid.Pi
        claimed |= sel
    if not claimed.all():
        raise ValueError(f"regions of {spec.name} do not cover the domain")
    field = Field2D(grid)
    inter = field.interior()
    inter[0] = rho
    inter[1] = rho * u
    inter[2] = rho * v
    inter[3] = gam * p + 0.5 * rho * (u * u + v * v) + pi
    inter[4] = gam
    inter[5] = pi
    return field
