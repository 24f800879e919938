"""Single-level orthonormal 2-D Haar transform.

Each non-overlapping 2x2 block ``[a b; c d]`` maps to::

    ll = (a + b + c + d) / 2      average
    hl = (a - b + c - d) / 2      vertical edges
    lh = (a + b - c - d) / 2      horizontal edges
    hh = (a - b - c + d) / 2      diagonal edges
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SubbandSet", "forward_haar", "inverse_haar", "normalize_band"]


@dataclass(frozen=True)
class SubbandSet:
    ll: np.ndarray
    lh: np.ndarray
    hl: np.ndarray
    hh: np.ndarray

    def __post_init__(self):
        shapes = {self.ll.shape, self.lh.shape, self.hl.shape, self.hh.shape}
        if len(shapes) != 1:
            raise ValueError(f"sub-band shapes differ: {sorted(shapes)}")

    @property
    def source_width(self) -> int:
        return 2 * self.ll.shape[1]

    @property
    def source_height(self) -> int:
        return 2 * self.ll.shape[0]

    def items(self):
        return (("ll", self.ll), ("lh", self.lh), ("hl", self.hl), ("hh", self.hh))

    def detail_energy(self) -> dict[str, float]:
        return {name: float(np.sum(band * band)) for name, band in self.items() if name != "ll"}


def forward_haar(img: np.ndarray) -> SubbandSet:
    h, w = img.shape
    if h % 2 or w % 2:
        raise ValueError(f"forward_haar needs even dimensions, got {w}x{h}; pad with pad_to_even first")
    x = img.astype(np.float64)
    a = x[0::2, 0::2]
    b = x[0::2, 1::2]
    c = x[1::2, 0::2]
    d = x[1::2, 1::2]
    return SubbandSet(
        ll=(a + b + c + d) / 2,
        lh=(a + b - c - d) / 2,
        hl=(a - b + c - d) / 2,
        hh=(a - b - c + d) / 2,
    )


def inverse_haar(bands: SubbandSet) -> np.ndarray:
    ll, lh, hl, hh = bands.ll, bands.lh, bands.hl, bands.hh
    out = np.empty((2 * ll.shape[0], 2 * ll.shape[1]), dtype=np.float64)
    out[0::2, 0::2] = (ll + hl + lh + hh) / 2
    out[0::2, 1::2] = (ll - hl + lh - hh) / 2
    out[1::2, 0::2] = (ll + hl - lh - hh) / 2
    out[1::2, 1::2] = (ll - hl - lh + hh) / 2
    return out


def normalize_band(band: np.ndarray) -> np.ndarray:
    """Affine min-max map of a coefficient plane onto uint8 [0, 255].

    A flat plane maps to all zeros.
    """
    lo, hi = float(band.min()), float(band.max())
    if hi == lo:
        return np.zeros(band.shape, dtype=np.uint8)
    return np.rint((band - lo) * (255.0 / (hi - lo))).astype(np.uint8)
