"""Grayscale Schlieren-style images of 2-D grid snapshots."""

from __future__ import annotations

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from plotview.io import GridSnapshot, read_grid_snapshot


def schlieren_from_density(rho: np.ndarray, dx: float, dy: float) -> np.ndarray:
    """exp(-80 |grad rho| / max) from central differences (one-sided edges)."""
    gx = np.empty_like(rho)
    gy = np.empty_like(rho)
    gx[:, 1:-1] = (rho[:, 2:] - rho[:, :-2]) / (2.0 * dx)
    gx[:, 0] = (rho[:, 1] - rho[:, 0]) / dx
    gx[:, -1] = (rho[:, -1] - rho[:, -2]) / dx
    gy[1:-1, :] = (rho[2:, :] - rho[:-2, :]) / (2.0 * dy)
    gy[0, :] = (rho[1, :] - rho[0, :]) / dy
    gy[-1, :] = (rho[-1, :] - rho[-2, :]) / dy
    mag = np.sqrt(gx * gx + gy * gy)
    peak = mag.max()
    if peak == 0.0:
        return np.ones_like(rho)
    return np.exp(-80.0 * mag / peak)


def plot2d(path: str, out: str, zoom=None) -> str:
    """Render the Schlieren shading of one grid snapshot to an image file.

    Uses the stored 'schlieren' array when present, otherwise recomputes it
    from the density.  Axes are in domain coordinates; ``zoom`` optionally
    restricts to (x_lo, x_hi, y_lo, y_hi).
    """
    snap: GridSnapshot = read_grid_snapshot(path)
    if "schlieren" in snap.data:
        shading = snap.data["schlieren"]
    elif "rho" in snap.data:
        shading = schlieren_from_density(snap.data["rho"], snap.dx, snap.dy)
    else:
        raise ValueError(f"{path}: snapshot has neither 'schlieren' nor 'rho'")
    x0, x1, y0, y1 = snap.extent
    aspect = (y1 - y0) / (x1 - x0)
    fig, ax = plt.subplots(figsize=(6.4, max(2.0, 6.4 * aspect) + 0.6))
    ax.imshow(
        shading,
        origin="lower",
        extent=snap.extent,
        cmap="gray",
        vmin=0.0,
        vmax=1.0,
        interpolation="nearest",
    )
    if zoom is not None:
        ax.set_xlim(zoom[0], zoom[1])
        ax.set_ylim(zoom[2], zoom[3])
    ax.set_xlabel("$x$")
    ax.set_ylabel("$y$")
    ax.set_title(f"t = {snap.time:g}")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
