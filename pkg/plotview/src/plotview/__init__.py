"""Offline figure rendering for multifluid-solver snapshot files.

Reads only the documented output formats (CSV line snapshots and
meta-plus-raw-array grid snapshots); no solver internals are imported.
"""

from plotview.io import GridSnapshot, read_csv_snapshot, read_grid_snapshot
from plotview.plot1d import plot1d
from plotview.plot2d import plot2d, schlieren_from_density

__all__ = [
    "GridSnapshot",
    "read_csv_snapshot",
    "read_grid_snapshot",
    "plot1d",
    "plot2d",
    "schlieren_from_density",
]

__version__ = "0.1.0"
