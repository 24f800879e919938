"""Matplotlib figures for detection reports and sub-band decompositions."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.patches import Rectangle  # noqa: E402

from .haar import SubbandSet  # noqa: E402

__all__ = ["plot_detection", "plot_subbands"]


def _figsize(width_px: int, height_px: int, max_in: float = 8.0) -> tuple[float, float]:
    scale = max_in / max(width_px, height_px)
    return max(width_px * scale, 2.0), max(height_px * scale, 2.0)


def plot_detection(img: np.ndarray, report, path, dpi: int = 100) -> None:
    """Save the image with region boxes (red) and character boxes (yellow)."""
    h, w = img.shape
    fig, ax = plt.subplots(figsize=_figsize(w, h))
    ax.imshow(img, cmap="gray", vmin=0, vmax=255, interpolation="nearest")
    for i, region in enumerate(report.regions):
        b = region.bbox
        ax.add_patch(Rectangle((b.x0 - 0.5, b.y0 - 0.5), b.width, b.height, fill=False, edgecolor="red", lw=1.5))
        ax.text(b.x0, b.y0 - 2, f"{i} t={region.otsu_threshold}", color="red", fontsize=8, va="bottom")
        for c in region.characters:
            cb = c.bbox
            ax.add_patch(Rectangle(
                (b.x0 + cb.x0 - 0.5, b.y0 + cb.y0 - 0.5), cb.width, cb.height,
                fill=False, edgecolor="yellow", lw=0.5,
            ))
    ax.set_title(f"{len(report.regions)} text region(s)")
    ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)


def plot_subbands(bands: SubbandSet, path, dpi: int = 100) -> None:
    """Save the four sub-bands in the usual LL|HL over LH|HH layout.

    Detail bands are shown as coefficient magnitudes.
    """
    layout = (("LL", bands.ll, False), ("HL", bands.hl, True), ("LH", bands.lh, True), ("HH", bands.hh, True))
    h, w = bands.ll.shape
    fw, fh = _figsize(2 * w, 2 * h)
    fig, axes = plt.subplots(2, 2, figsize=(fw, fh))
    for ax, (name, band, detail) in zip(axes.ravel(), layout):
        ax.imshow(np.abs(band) if detail else band, cmap="gray", interpolation="nearest")
        ax.set_title(name, fontsize=10)
        ax.set_axis_off()
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
