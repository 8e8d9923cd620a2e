"""PNG renderings of the evidence profiles that accompany reports.

Profiles are the same arrays the CLI writes as CSV: two columns
``theta,value`` for boundary profiles and three columns ``re,im,value``
for disk samples.  Figures are drawn on the Agg canvas directly, so no
display or pyplot state is involved.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.colors import LogNorm
from matplotlib.figure import Figure

_LABELS = {
    "disk": ("evidence |a|^2 V on the disk grid", "|a|^2 V"),
    "ratio": ("boundary ratio (1 - |b|^2) / prod |l - z_j|^2", "ratio"),
    "density": ("Clark density (1 - |b|^2) / |l - b|^2", "density"),
    "modulus": ("boundary modulus", "value"),
}


def _figure(width: float = 6.0, height: float = 4.0) -> Figure:
    fig = Figure(figsize=(width, height), dpi=100)
    FigureCanvasAgg(fig)
    return fig


def plot_boundary_profile(data: np.ndarray, title: str, ylabel: str, path) -> Path:
    theta, value = data[:, 0], data[:, 1]
    order = np.argsort(theta)
    fig = _figure()
    ax = fig.add_subplot(111)
    finite = np.isfinite(value)
    positive = finite & (value > 0)
    if positive.sum() > 0 and np.nanmax(value[positive]) / max(np.nanmin(value[positive]), 1e-300) > 1e3:
        ax.set_yscale("log")
    ax.plot(theta[order][finite[order]], value[order][finite[order]], lw=1.0, color="tab:blue")
    ax.set_xlim(0.0, 2 * np.pi)
    ax.set_xlabel("theta")
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=10)
    ax.grid(alpha=0.3)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, metadata={"Software": None})
    return path


def plot_disk_profile(data: np.ndarray, title: str, label: str, path) -> Path:
    re, im, value = data[:, 0], data[:, 1], data[:, 2]
    keep = np.isfinite(value) & (value > 0)
    fig = _figure(5.5, 5.0)
    ax = fig.add_subplot(111)
    if keep.any():
        lo, hi = float(np.min(value[keep])), float(np.max(value[keep]))
        norm = LogNorm(vmin=lo, vmax=hi if hi > lo else lo * 1.0001)
        sc = ax.scatter(re[keep], im[keep], c=value[keep], s=1.0, norm=norm, cmap="viridis", rasterized=True)
        fig.colorbar(sc, ax=ax, label=label)
    t = np.linspace(0, 2 * np.pi, 512)
    ax.plot(np.cos(t), np.sin(t), color="black", lw=0.6)
    ax.set_aspect("equal")
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, metadata={"Software": None})
    return path


def render_profiles(profiles: dict, outdir, stem: str) -> list[Path]:
    """Write one PNG per profile into ``outdir``; returns the paths in name order."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    for name in sorted(profiles):
        data = np.asarray(profiles[name], dtype=float)
        title, label = _LABELS.get(name, (name, "value"))
        target = outdir / f"{stem}_{name}.png"
        if data.ndim == 2 and data.shape[1] == 3:
            written.append(plot_disk_profile(data, title, label, target))
        elif data.ndim == 2 and data.shape[1] == 2:
            written.append(plot_boundary_profile(data, title, label, target))
    return written
