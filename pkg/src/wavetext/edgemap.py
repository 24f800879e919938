"""Candidate-text mask from the three Haar detail sub-bands.

Each detail band is thresholded, dilated, and the three masks are AND-ed:
text is where horizontal, vertical and diagonal edges coexist. The fused
mask is mapped back to source resolution and rows with too few candidate
pixels are cleared.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

__all__ = [
    "EdgeParams",
    "binarize_subband",
    "dilate",
    "fuse_and",
    "upsample2x",
    "row_threshold",
    "row_filter",
]

_SQUARE3 = np.ones((3, 3), dtype=bool)


@dataclass
class EdgeParams:
    # multiplier on the std of |coefficients|; larger prunes more texture
    sigma: float = 1.5
    dilate_iters: int = 2
    # row threshold = max(round(row_frac * width), row_min)
    row_frac: float = 0.02
    row_min: int = 4

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"sigma must be > 0, got {self.sigma}")
        if self.dilate_iters < 0:
            raise ValueError(f"dilate_iters must be >= 0, got {self.dilate_iters}")
        if not 0 < self.row_frac <= 1:
            raise ValueError(f"row_frac must be in (0, 1], got {self.row_frac}")
        if self.row_min < 1:
            raise ValueError(f"row_min must be >= 1, got {self.row_min}")


def binarize_subband(band: np.ndarray, sigma: float) -> np.ndarray:
    """Mark coefficients with ``|c| > sigma * std(|c|)``.

    A band with zero spread (e.g. all zeros) yields an all-false mask.
    """
    if band.size == 0:
        raise ValueError("binarize_subband needs a non-empty band")
    mag = np.abs(band)
    spread = float(mag.std())
    if spread == 0.0:
        return np.zeros(band.shape, dtype=bool)
    return mag > sigma * spread


def dilate(mask: np.ndarray, iters: int) -> np.ndarray:
    """Dilate ``iters`` times with a 3x3 square; pixels outside count as false."""
    if iters <= 0:
        return mask.copy()
    return ndimage.binary_dilation(mask, structure=_SQUARE3, iterations=iters)


def fuse_and(h: np.ndarray, v: np.ndarray, d: np.ndarray) -> np.ndarray:
    if not (h.shape == v.shape == d.shape):
        raise ValueError(f"fuse_and shape mismatch: {h.shape}, {v.shape}, {d.shape}")
    return h & v & d


def upsample2x(mask: np.ndarray, target_w: int, target_h: int) -> np.ndarray:
    """Nearest-neighbour x2 expansion cropped to ``target_w`` x ``target_h``."""
    mh, mw = mask.shape
    if 2 * mh < target_h or 2 * mw < target_w:
        raise ValueError(f"mask {mw}x{mh} too small for target {target_w}x{target_h}")
    big = np.repeat(np.repeat(mask, 2, axis=0), 2, axis=1)
    return big[:target_h, :target_w].copy()


def row_threshold(width: int, row_frac: float, row_min: int) -> int:
    # round-half-up so the threshold does not depend on banker's rounding
    return max(int(np.floor(row_frac * width + 0.5)), row_min)


def row_filter(mask: np.ndarray, row_frac: float, row_min: int) -> np.ndarray:
    t = row_threshold(mask.shape[1], row_frac, row_min)
    keep = mask.sum(axis=1) >= t
    return mask & keep[:, None]
