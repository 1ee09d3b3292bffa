"""CSV output for experiment tables, plus optional matplotlib renderings."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from cedct.experiments import Table


def format_value(value) -> str:
    """17 significant digits so that floats survive a text round trip; NaN is empty."""
    value = float(value)
    if math.isnan(value):
        return ""
    if value == int(value) and abs(value) < 2**53:
        return str(int(value))
    return f"{value:.17g}"


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(format_value(v) for v in row) for row in rows)
    Path(path).write_text("\n".join(lines) + "\n", newline="\n")


def write_table(table: Table, out_dir) -> Path:
    path = Path(out_dir) / f"{table.name}.csv"
    write_csv(path, list(table.columns), zip(*table.columns.values()))
    return path


def read_csv(path) -> dict[str, np.ndarray]:
    """Read a CSV written by :func:`write_csv`; empty cells become NaN."""
    lines = Path(path).read_text().splitlines()
    header = lines[0].split(",")
    data = [[float(cell) if cell else np.nan for cell in line.split(",")] for line in lines[1:]]
    values = np.array(data, dtype=float).reshape(len(data), len(header))
    return {name: values[:, i] for i, name in enumerate(header)}


def _style(ax, title: str) -> None:
    ax.set_title(title, fontsize=9)
    ax.tick_params(labelsize=8)
    ax.grid(True, lw=0.3, alpha=0.5)


def plot_tables(figure_id: str, tables: Sequence[Table], out_dir) -> Path:
    """Render one PNG per figure id next to its CSV files."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(out_dir) / f"{figure_id}.png"
    if figure_id in ("fig5", "fig6"):
        fig, axes = plt.subplots(len(tables), 2, figsize=(8, 3.8 * len(tables)), squeeze=False)
        for row, table in zip(axes, tables):
            side = int(round(math.sqrt(len(table))))
            for ax, key in zip(row, ("G", "F")):
                grid = table.columns[key].reshape(side, side)
                ax.contour(grid.T, levels=10, extent=(0, 1, 0, 1), linewidths=0.7)
                ax.contour(grid.T, levels=[-0.001], extent=(0, 1, 0, 1), linestyles="dashed", colors="k", linewidths=0.5)
                _style(ax, f"{key}: {table.title}")
                ax.set_aspect("equal")
    else:
        derivative_keys = [key for key in tables[0].columns if key.endswith("prime")]
        ncols = 2 if derivative_keys else 1
        fig, axes = plt.subplots(len(tables), ncols, figsize=(6 * ncols, 3 * len(tables)), squeeze=False)
        for row, table in zip(axes, tables):
            cols = table.columns
            t = cols["t"]
            knots = ~np.isnan(cols["k"])
            for key, values in cols.items():
                if key in ("t", "k") or key.startswith("err") or key.endswith("imag"):
                    continue
                ax = row[1] if key.endswith("prime") else row[0]
                style = "k:" if key.startswith("g") else "-"
                ax.plot(t, values, style, lw=1, label=key)
            row[0].plot(t[knots], cols["g"][knots], "ko", ms=3)
            for ax in row:
                ax.legend(fontsize=7)
                _style(ax, table.title)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata={"Software": None})
    plt.close(fig)
    return path
