"""Headless matplotlib rendering of the experiment tables to image files.

Figures are a convenience companion to the CSV output (the CSV is the
contract); everything draws through an Agg-backed Figure so no display is
ever required.
"""

from __future__ import annotations

from pathlib import Path

from matplotlib.figure import Figure

LINE_KW = {"linewidth": 1.4}
GRID_KW = {"alpha": 0.3, "linewidth": 0.5}


def _finish(fig: Figure, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    return path


def render_lines(series, path, x_col=None, title=None, xlabel=None, ylabel=None,
                 logy=False):
    """One panel, one curve per non-x column of a TimeSeries."""
    fig = Figure(figsize=(6.0, 4.0))
    ax = fig.add_subplot(111)
    x_col = x_col or series.columns[0]
    x = series.column(x_col)
    for name in series.columns:
        if name == x_col:
            continue
        ax.plot(x, series.column(name), label=name, **LINE_KW)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel or x_col)
    if ylabel:
        ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, **GRID_KW)
    if len(series.columns) > 2:
        ax.legend(fontsize=8)
    return _finish(fig, path)


def render_panels(panel_map, path, suptitle=None, xlabel=None, logy=False,
                  stem=False):
    """Grid of panels; panel_map maps a title to a TimeSeries."""
    n = len(panel_map)
    ncols = 2 if n > 1 else 1
    nrows = (n + ncols - 1) // ncols
    fig = Figure(figsize=(5.5 * ncols, 3.4 * nrows))
    axes = fig.subplots(nrows, ncols, squeeze=False)
    for ax in axes.ravel()[n:]:
        ax.set_visible(False)
    for ax, (name, series) in zip(axes.ravel(), panel_map.items()):
        x = series.column(series.columns[0])
        for col in series.columns[1:]:
            if stem:
                ax.vlines(x, 0.0, series.column(col), linewidth=1.0)
                ax.plot(x, series.column(col), "o", markersize=2.5, label=col)
            else:
                ax.plot(x, series.column(col), label=col, **LINE_KW)
        if logy:
            ax.set_yscale("log")
        ax.set_title(name, fontsize=10)
        ax.set_xlabel(xlabel or series.columns[0])
        ax.grid(True, **GRID_KW)
        if len(series.columns) > 2:
            ax.legend(fontsize=7)
    if suptitle:
        fig.suptitle(suptitle)
    return _finish(fig, path)
