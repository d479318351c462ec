"""Pass/fail heatmap for a batch of reports (matplotlib is imported on use)."""

from __future__ import annotations

from typing import Sequence

from .report import Report


def verdict_grid(reports: Sequence[Report]) -> tuple[list[str], list[str], list[list[float | None]]]:
    """Rows are subjects, columns axioms; cells hold the passing fraction or None."""
    rows: list[str] = []
    cols: list[str] = []
    cells: dict[tuple[str, str], list[bool]] = {}
    for rep in reports:
        if rep.subject not in rows:
            rows.append(rep.subject)
        for c in rep.checks:
            if c.axiom not in cols:
                cols.append(c.axiom)
            cells.setdefault((rep.subject, c.axiom), []).append(c.passed)
    grid = []
    for r in rows:
        line = []
        for a in cols:
            v = cells.get((r, a))
            line.append(None if v is None else sum(v) / len(v))
        grid.append(line)
    return rows, cols, grid


def save_heatmap(reports: Sequence[Report], path: str) -> None:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.colors import LinearSegmentedColormap

    rows, cols, grid = verdict_grid(reports)
    data = [[float("nan") if v is None else v for v in line] for line in grid]
    cmap = LinearSegmentedColormap.from_list("passfail", ["#c0392b", "#f4d03f", "#27ae60"])
    cmap.set_bad("#dddddd")
    fig, ax = plt.subplots(figsize=(2.0 + 0.6 * max(len(cols), 1), 2.0 + 0.4 * max(len(rows), 1)))
    ax.imshow(data, cmap=cmap, vmin=0.0, vmax=1.0, aspect="auto")
    ax.set_xticks(range(len(cols)), labels=cols, rotation=45, ha="right")
    ax.set_yticks(range(len(rows)), labels=rows)
    ax.set_title("fraction of passing checks")
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
