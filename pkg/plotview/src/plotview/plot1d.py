"""Overlay line plots of 1-D snapshots, optionally with a zoom panel."""

from __future__ import annotations

from pathlib import Path
from typing import Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from plotview.io import CSV_FIELDS, read_csv_snapshot

_MARKERS = ("o", "s", "^", "d", "v", "p")
_LABELS = {
    "rho": r"$\rho$",
    "u": "$u$",
    "p": "$p$",
    "Gamma": r"$\Gamma$",
    "Pi": r"$\Pi$",
}


def _curve_label(path: str) -> str:
    stem = Path(path).stem
    # snapshot names look like <problem>_<scheme>_t<time>; prefer the scheme
    parts = stem.split("_")
    return parts[1] if len(parts) >= 3 else stem


def plot1d(
    paths: Sequence[str],
    out: str,
    ref: Optional[str] = None,
    var: str = "rho",
    zoom: Optional[Tuple[float, float]] = None,
    labels: Optional[Sequence[str]] = None,
) -> str:
    """Render variable-vs-x curves of one or more CSV snapshots to a file.

    The reference snapshot, when given, is drawn as a plain line under the
    marked scheme curves.  A zoom window adds a second panel restricted to
    x in [a, b].
    """
    if var not in CSV_FIELDS:
        raise ValueError(f"unknown variable {var!r}; choose one of {CSV_FIELDS}")
    if not paths:
        raise ValueError("need at least one snapshot file")
    curves = [(read_csv_snapshot(p), labels[i] if labels else _curve_label(p))
              for i, p in enumerate(paths)]
    refdata = read_csv_snapshot(ref) if ref else None

    npanels = 2 if zoom else 1
    fig, axes = plt.subplots(1, npanels, figsize=(5.2 * npanels, 4.0))
    axes = [axes] if npanels == 1 else list(axes)
    for ipanel, ax in enumerate(axes):
        if refdata is not None:
            ax.plot(refdata["x"], refdata[var], "-", color="0.35", lw=1.0, label="reference")
        for i, (data, label) in enumerate(curves):
            ax.plot(
                data["x"],
                data[var],
                marker=_MARKERS[i % len(_MARKERS)],
                ms=3.0,
                lw=0.8,
                fillstyle="none",
                label=label,
            )
        ax.set_xlabel("$x$")
        ax.set_ylabel(_LABELS.get(var, var))
        if ipanel == 1:
            a, b = zoom
            ax.set_xlim(a, b)
            inside = (curves[0][0]["x"] >= a) & (curves[0][0]["x"] <= b)
            if inside.any():
                vals = curves[0][0][var][inside]
                pad = 0.1 * max(vals.max() - vals.min(), 1e-12)
                ax.set_ylim(vals.min() - pad, vals.max() + pad)
    axes[0].legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out
