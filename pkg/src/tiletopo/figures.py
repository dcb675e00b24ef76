"""Matplotlib figure output for the report paths.

All functions import matplotlib lazily with the Agg backend so the exact
analysis paths never pay for (or depend on) plotting; figures are a visual
companion to the delimited reports, never an oracle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .numeric import Point2, format_rational
from .render import RasterImage, ViewBox


def _plt():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _image_axes(plt, image: RasterImage, view: ViewBox):
    import numpy as np

    data = np.frombuffer(bytes(image.pixels), dtype=np.uint8).reshape(
        image.height, image.width, 3
    )
    fig, ax = plt.subplots(figsize=(7, 7 * image.height / image.width))
    ax.imshow(
        data,
        extent=(float(view.x0), float(view.x1), float(view.y0), float(view.y1)),
        interpolation="nearest",
        aspect="auto",
    )
    return fig, ax


def save_attractor_figure(
    image: RasterImage,
    view: ViewBox,
    path: str,
    title: str,
    *,
    witness: Point2 | None = None,
    separation: tuple[Fraction, Fraction] | None = None,
) -> None:
    """Render the attractor raster with optional certificate annotations."""
    plt = _plt()
    fig, ax = _image_axes(plt, image, view)
    if witness is not None:
        ax.plot([float(witness.x)], [float(witness.y)], "o", color="#d62728", markersize=6)
        ax.annotate(
            f"({format_rational(witness.x)}, {format_rational(witness.y)})",
            (float(witness.x), float(witness.y)),
            textcoords="offset points",
            xytext=(6, 6),
            color="#d62728",
            fontsize=8,
        )
    if separation is not None:
        for x in separation:
            ax.axvline(float(x), color="#1f77b4", linestyle="--", linewidth=1)
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_patch_figure(points: Iterable[Point2], path: str, title: str) -> None:
    """Scatter plot of a translate-set patch."""
    plt = _plt()
    xs = []
    ys = []
    for pt in points:
        xs.append(float(pt.x))
        ys.append(float(pt.y))
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.plot(xs, ys, ".", markersize=3, color="#2ca02c")
    ax.set_aspect("equal")
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_grid_figure(
    rows: Sequence[tuple[Fraction, int]], path: str, title: str, ylabel: str
) -> None:
    """Step plot of an integer-valued quantity over a parameter sweep."""
    plt = _plt()
    xs = [float(eps) for eps, _ in rows]
    ys = [val for _, val in rows]
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.step(xs, ys, where="post", color="#9467bd")
    ax.set_xlabel("eps")
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
