"""SVG line plots of patterns and band-limit profiles.

Each plot is accompanied by a ``<stem>.data.csv`` file holding exactly the
plotted points (columns ``series,x,y``).
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from ..bandlimit import ReconstructionProfile, top_hat  # noqa: E402
from ..core import Pattern, peak_normalize  # noqa: E402
from .io import write_table_csv  # noqa: E402

Series = Tuple[str, np.ndarray, np.ndarray]

_STYLES = ["-", "--", "-.", ":", (0, (5, 1, 1, 1)), (0, (3, 1, 1, 1, 1, 1)), (0, (1, 2))]
_MARKERS = [None, "o", "s", "^", "v", "D", "x"]


def data_path(plot_path) -> Path:
    plot_path = Path(plot_path)
    return plot_path.with_name(plot_path.stem + ".data.csv")


def emit_plot(series: Sequence[Series], path, xlabel: str, ylabel: str, title: str = "") -> Path:
    """Write an SVG with one line per series plus the raw data alongside.

    Returns the path of the data file.
    """
    if not series:
        raise ValueError("nothing to plot")
    with plt.rc_context({"svg.fonttype": "none", "svg.hashsalt": "slitdiff"}):
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for i, (label, x, y) in enumerate(series):
            (line,) = ax.plot(
                x, y, linestyle=_STYLES[i % len(_STYLES)], marker=_MARKERS[i % len(_MARKERS)],
                markevery=max(1, len(x) // 12), markersize=3, linewidth=1.2, label=label,
            )
            line.set_gid(f"series-{i}")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        ax.legend(loc="upper right", fontsize="small")
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)

    rows = [(label, float(xv), float(yv)) for label, x, y in series for xv, yv in zip(x, y)]
    out = data_path(path)
    write_table_csv(("series", "x", "y"), rows, out)
    return out


def plot_patterns(patterns: Sequence[Pattern], path) -> Path:
    series = [
        (p.method, p.grid.sin_theta, peak_normalize(p.intensities)) for p in patterns
    ]
    return emit_plot(series, path, "sin θ", "normalized intensity")


def plot_profile(profile: ReconstructionProfile, cfg, path) -> Path:
    """Reconstruction ``psi'(y) sqrt(a)`` against ``y/a`` with the top-hat overlaid."""
    scale = np.sqrt(cfg.a)
    x = profile.ys / cfg.a
    series = [
        (f"band-limited, k_m a = {cfg.k_m * cfg.a:.4g}", x, profile.values * scale),
        ("top-hat", x, top_hat(cfg, profile.ys) * scale),
    ]
    return emit_plot(series, path, "y / a", "ψ′(y) √a")
