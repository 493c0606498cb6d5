"""Snapshot file readers.

CSV snapshots: header ``x,rho,u,p,Gamma,Pi``, one row per cell.  Grid
snapshots: a ``<base>.meta`` text file (``key: value`` lines declaring nx,
ny, x0, y0, dx, dy, time, fields, endianness) plus one raw IEEE-754 float64
array per field named ``<base>.<field>.bin``, row-major with the x-index
fastest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict

import numpy as np

CSV_HEADER = "x,rho,u,p,Gamma,Pi"
CSV_FIELDS = ("rho", "u", "p", "Gamma", "Pi")


class SnapshotFormatError(ValueError):
    """Malformed snapshot file."""


@dataclass
class GridSnapshot:
    nx: int
    ny: int
    x0: float
    y0: float
    dx: float
    dy: float
    time: float
    data: Dict[str, np.ndarray]
    meta: Dict[str, str] = field(default_factory=dict)

    @property
    def extent(self):
        """Domain rectangle (x0, x1, y0, y1) for image axes."""
        return (self.x0, self.x0 + self.nx * self.dx, self.y0, self.y0 + self.ny * self.dy)


def read_csv_snapshot(path: str) -> Dict[str, np.ndarray]:
    """Columns of a 1-D CSV snapshot keyed by variable name (plus 'x')."""
    lines = Path(path).read_text().strip().splitlines()
    if not lines or lines[0].strip() != CSV_HEADER:
        head = lines[0].strip() if lines else "<empty>"
        raise SnapshotFormatError(f"{path}: expected header {CSV_HEADER!r}, got {head!r}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 6:
            raise SnapshotFormatError(f"{path}:{lineno}: expected 6 columns, got {len(parts)}")
        try:
            rows.append([float(t) for t in parts])
        except ValueError as exc:
            raise SnapshotFormatError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise SnapshotFormatError(f"{path}: no data rows")
    arr = np.asarray(rows)
    out = {"x": arr[:, 0]}
    for i, name in enumerate(CSV_FIELDS):
        out[name] = arr[:, i + 1]
    return out


def read_grid_snapshot(path: str) -> GridSnapshot:
    """Decode a grid snapshot from its .meta path (or the common base path)."""
    meta_path = path if path.endswith(".meta") else path + ".meta"
    base = meta_path[: -len(".meta")]
    meta: Dict[str, str] = {}
    for lineno, raw in enumerate(Path(meta_path).read_text().splitlines(), start=1):
        if not raw.strip():
            continue
        if ":" not in raw:
            raise SnapshotFormatError(f"{meta_path}:{lineno}: expected 'key: value'")
        key, value = raw.split(":", 1)
        meta[key.strip()] = value.strip()
    for key in ("nx", "ny", "x0", "y0", "dx", "dy", "time", "fields"):
        if key not in meta:
            raise SnapshotFormatError(f"{meta_path}: missing key {key!r}")
    nx = int(meta["nx"])
    ny = int(meta["ny"])
    endian = meta.get("endianness", "little")
    if endian not in ("little", "big"):
        raise SnapshotFormatError(f"{meta_path}: unknown endianness {endian!r}")
    dtype = "<f8" if endian == "little" else ">f8"
    data = {}
    for name in meta["fields"].split(","):
        name = name.strip()
        arr = np.fromfile(f"{base}.{name}.bin", dtype=dtype)
        if arr.size != nx * ny:
            raise SnapshotFormatError(
                f"{base}.{name}.bin: expected {nx * ny} values, got {arr.size}"
            )
        data[name] = arr.astype(np.float64).reshape(ny, nx)
    return GridSnapshot(
        nx=nx,
        ny=ny,
        x0=float(meta["x0"]),
        y0=float(meta["y0"]),
        dx=float(meta["dx"]),
        dy=float(meta["dy"]),
        time=float(meta["time"]),
        data=data,
        meta=meta,
    )
