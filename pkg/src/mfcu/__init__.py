"""Central-upwind finite-volume solvers for compressible multifluid flows.

The package provides three interface-flux variants (a baseline
path-conservative central-upwind scheme, its low-dissipation variant, and a
fifth-order WENO-based extension) on uniform 1-D and 2-D grids, together with
a catalog of shock/bubble benchmark problems and a small CLI driver.
"""

import os as _os

# the built-in thread pool is always available and the sweep chunks are
# coarse, so skip probing the optional TBB/OpenMP layers
_os.environ.setdefault("NUMBA_THREADING_LAYER", "workqueue")

from mfcu.core import (
    ConservedState,
    FluidSpec,
    Grid1D,
    Grid2D,
    InvalidFluidError,
    InvalidStateError,
    PrimitiveState,
    conserved_from_primitive,
    gamma_pi_from_eos,
    primitive_from_conserved,
    sound_speed,
)
from mfcu.integrator import SchemeConfig, SolverAbort

__all__ = [
    "ConservedState",
    "FluidSpec",
    "Grid1D",
    "Grid2D",
    "InvalidFluidError",
    "InvalidStateError",
    "PrimitiveState",
    "SchemeConfig",
    "SolverAbort",
    "conserved_from_primitive",
    "gamma_pi_from_eos",
    "primitive_from_conserved",
    "sound_speed",
]

__version__ = "0.1.0"
