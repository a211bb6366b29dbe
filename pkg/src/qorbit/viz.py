"""Figure rendering for census and scaling reports.

Report-producing commands can drop a PNG next to their CSV/JSON output:
the scaling experiment gets a log-log view of max t_f against the p^(1/2)
and p^(3/4) reference curves, a census gets its t_f histogram.  Rendering
always goes to a file (Agg backend), never to a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .census import CensusReport, ScalingTable

_RC = {
    "figure.figsize": (6.4, 4.0),
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
}


def save_scaling_figure(table: ScalingTable, path: str) -> None:
    """Log-log scatter of max t_f per prime with scaling guide curves."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        ps = [r.p for r in table.rows]
        tfs = [r.max_tf for r in table.rows]
        ax.plot(ps, tfs, "o", ms=4, label="max $t_f$ (stable $f$)")
        if ps:
            grid = sorted(ps)
            ax.plot(grid, [p**0.5 for p in grid], "--", label="$p^{1/2}$ (Birthday)")
            bound = table.ratio_34_bound
            ax.plot(grid, [bound * p**0.75 for p in grid], ":", label=f"${bound:g}\\,p^{{3/4}}$ (bound)")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("p")
        ax.set_ylabel("max $t_f$")
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)


def save_tf_histogram(report: CensusReport, path: str) -> None:
    """Bar chart of the t_f histogram over stable triples."""
    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        keys = sorted(report.tf_histogram)
        ax.bar(keys, [report.tf_histogram[k] for k in keys], width=0.8)
        ax.set_xlabel("$t_f$")
        ax.set_ylabel("stable triples")
        ax.set_title(f"p = {report.p}: {report.stable_count} stable of {report.total}")
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
