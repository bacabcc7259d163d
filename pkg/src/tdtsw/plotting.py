"""Matplotlib figures for scenario grids and scored batches.

Output is byte-stable: the SVG id salt is fixed and the date stamp dropped.
"""
from __future__ import annotations

import io
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .inference import Color, ScenarioTable  # noqa: E402

FILL = {
    Color.RED: "#d62728",
    Color.ORANGE: "#ff7f0e",
    Color.GREEN: "#2ca02c",
}
_RC = {
    "svg.hashsalt": "tdtsw",
    "svg.fonttype": "path",
    "font.family": "DejaVu Sans",
    "font.size": 10,
}


def _metadata(fmt):
    if fmt == "svg":
        return {"Date": None, "Creator": None}
    if fmt == "pdf":
        return {"CreationDate": None, "Creator": None, "Producer": None}
    if fmt == "png":
        return {"Software": None}
    return None


def _save(fig, target, fmt):
    with plt.rc_context(_RC):
        fig.savefig(target, format=fmt, metadata=_metadata(fmt))
    plt.close(fig)


def _fmt_of(path, fmt):
    if fmt:
        return fmt
    suffix = Path(path).suffix.lstrip(".").lower()
    return suffix or "svg"


def scenario_grid_figure(table: ScenarioTable):
    row_var, col_var = table.variables
    rows = list(dict.fromkeys(cell.labels[0] for cell in table))
    cols = list(dict.fromkeys(cell.labels[1] for cell in table))
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(1.6 * len(cols) + 1.2, 1.4 * len(rows) + 1.0))
        for cell in table:
            i, j = rows.index(cell.labels[0]), cols.index(cell.labels[1])
            y = len(rows) - 1 - i
            ax.add_patch(plt.Rectangle((j, y), 1, 1, facecolor=FILL[cell.result.color],
                                       edgecolor="white", linewidth=2))
            ax.text(j + 0.5, y + 0.62, f"{cell.id}: {cell.result.label}",
                    ha="center", va="center", color="white", fontweight="bold")
            ax.text(j + 0.5, y + 0.32, f"{cell.result.crisp:.3f}",
                    ha="center", va="center", color="white")
        ax.set_xlim(0, len(cols))
        ax.set_ylim(0, len(rows))
        ax.set_xticks([j + 0.5 for j in range(len(cols))], cols)
        ax.set_yticks([len(rows) - 0.5 - i for i in range(len(rows))], rows)
        ax.set_xlabel(col_var)
        ax.set_ylabel(row_var)
        ax.set_aspect("equal")
        ax.tick_params(length=0)
        for spine in ax.spines.values():
            spine.set_visible(False)
        ax.set_title("Scenario grid", loc="left")
        fig.tight_layout()
    return fig


def render_scenario_grid(table: ScenarioTable, target, fmt=None) -> None:
    """Write the grid figure to a path or a binary file object."""
    if isinstance(target, (str, Path)):
        fmt = _fmt_of(target, fmt)
    _save(scenario_grid_figure(table), target, fmt or "svg")


def scenario_grid_svg(table: ScenarioTable) -> str:
    buf = io.BytesIO()
    render_scenario_grid(table, buf, "svg")
    return buf.getvalue().decode("utf-8")


def batch_figure(points):
    """Scatter of scored rows; ``points`` yields (d, t, color)."""
    points = list(points)
    with plt.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 4.5))
        for color in Color:
            xs = [p[0] for p in points if p[2] is color]
            ys = [p[1] for p in points if p[2] is color]
            if xs:
                ax.scatter(xs, ys, s=28, c=FILL[color], label=color.value, edgecolors="none")
        ax.set_xlim(-0.02, 1.02)
        ax.set_ylim(-0.02, 1.02)
        ax.set_xlabel("D")
        ax.set_ylabel("T")
        ax.set_title("Scored rows by SW colour", loc="left")
        if points:
            ax.legend(frameon=False, loc="lower left")
        fig.tight_layout()
    return fig


def render_batch(points, target, fmt=None) -> None:
    if isinstance(target, (str, Path)):
        fmt = _fmt_of(target, fmt)
    _save(batch_figure(points), target, fmt or "svg")
