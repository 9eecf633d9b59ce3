"""Matplotlib rendering of AP@k histogram data to image files."""

from __future__ import annotations

from collections.abc import Sequence
from os import PathLike

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sampling import HistogramData


def render_histograms(
    datasets: Sequence[HistogramData],
    path: str | PathLike,
    title: str | None = None,
) -> None:
    """Draw one or more AP@k histograms as overlaid bars and save the figure.

    Counts are plotted as-is (not density-normalized); overlapping datasets
    are distinguished by color and transparency.
    """
    if not datasets:
        raise ValueError("need at least one histogram to render")
    fig, ax = plt.subplots(figsize=(8, 5))
    for data in datasets:
        edges = data.bin_edges
        widths = [hi - lo for lo, hi in zip(edges[:-1], edges[1:])]
        ax.bar(
            edges[:-1],
            data.counts,
            width=widths,
            align="edge",
            alpha=0.6,
            label=f"{data.model_label}, n={data.n}",
        )
    ax.set_xlabel("AP@k")
    ax.set_ylabel("count")
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
