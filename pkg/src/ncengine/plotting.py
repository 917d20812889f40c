"""Matplotlib rendering of sweep tables.

Figures are drawn with the Agg backend and saved without the software/date
metadata matplotlib normally embeds, so the PNG bytes depend only on the data.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

STYLE = {
    "font.family": "serif",
    "font.serif": ["DejaVu Serif"],
    "mathtext.fontset": "dejavuserif",
    "axes.labelsize": 10,
    "font.size": 9,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.2,
    "svg.hashsalt": "ncengine",
}

LABELS = {
    "zeta": r"coupling $\zeta$",
    "theta": r"NC parameter $\theta$",
    "gamma": r"$\gamma$",
    "xi": r"$\xi$",
    "kconst": r"$K$",
    "mass": r"$m$",
    "omega_hot": r"$\omega_1$",
    "omega_cold": r"$\omega_2$",
    "t_hot": r"$T_h$",
    "t_cold": r"$T_c$",
}


def figsize(width=3.4):
    return (width, width * GOLDEN)


def _save(fig, path):
    fig.savefig(path, dpi=150, metadata={"Software": None})
    plt.close(fig)
    return Path(path)


def plot_sweep(grid, rows, path, title=None):
    """Line plot for 1-D sweeps, filled contour map for 2-D sweeps.

    Points that failed (NaN efficiency) are left blank.
    """
    eff = np.array([r["efficiency"] for r in rows], dtype=float)
    carnot = 1.0 - grid.fixed.t_cold / grid.fixed.t_hot
    with plt.rc_context(STYLE):
        if len(grid.axes) == 1:
            ax_spec = grid.axes[0]
            x = np.array([r[ax_spec.name] for r in rows], dtype=float)
            fig, ax = plt.subplots(figsize=figsize(), constrained_layout=True)
            ax.plot(x, eff, color="#08589e", label=r"$\eta$")
            ax.axhline(carnot, color="0.5", ls="--", lw=0.8, label="Carnot")
            ax.set_xlabel(LABELS.get(ax_spec.name, ax_spec.name))
            ax.set_ylabel(r"efficiency $\eta$")
            ax.legend(frameon=False, loc="best")
        else:
            a0, a1 = grid.axes
            z = eff.reshape(a0.count, a1.count)
            fig, ax = plt.subplots(figsize=figsize(3.8), constrained_layout=True)
            mesh = ax.pcolormesh(a1.values(), a0.values(), np.ma.masked_invalid(z),
                                 shading="nearest", cmap="viridis")
            fig.colorbar(mesh, ax=ax, label=r"efficiency $\eta$")
            ax.set_xlabel(LABELS.get(a1.name, a1.name))
            ax.set_ylabel(LABELS.get(a0.name, a0.name))
        if title:
            ax.set_title(f"{title}: {grid.fixed.engine}, {grid.fixed.space}, {grid.fixed.mode}")
        return _save(fig, path)
