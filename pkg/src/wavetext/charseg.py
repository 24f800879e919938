"""Character separation: polarity normalisation and 4-connected labelling."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .grow import BBox

__all__ = [
    "Polarity",
    "Component",
    "detect_polarity",
    "normalize_polarity",
    "label_image",
    "label_components",
    "extract_characters",
]

_CROSS = ndimage.generate_binary_structure(2, 1)


class Polarity(str, enum.Enum):
    DARK_BACKGROUND = "dark_background"
    LIGHT_BACKGROUND = "light_background"


@dataclass
class Component:
    label: int
    bbox: BBox  # region-local
    area: int
    mask: np.ndarray


def detect_polarity(region_mask: np.ndarray) -> Polarity:
    """Majority vote over the 3x3 patches at the four corners.

    Patches are clipped on regions smaller than 3x3 and may overlap on
    regions smaller than 6x6; overlapping pixels are counted once per patch.
    """
    h, w = region_mask.shape
    k_h, k_w = min(3, h), min(3, w)
    patches = (
        region_mask[:k_h, :k_w],
        region_mask[:k_h, w - k_w:],
        region_mask[h - k_h:, :k_w],
        region_mask[h - k_h:, w - k_w:],
    )
    white = sum(int(p.sum()) for p in patches)
    total = sum(p.size for p in patches)
    return Polarity.LIGHT_BACKGROUND if 2 * white > total else Polarity.DARK_BACKGROUND


def normalize_polarity(mask: np.ndarray, p: Polarity) -> np.ndarray:
    """Complement light-background regions so characters are always foreground."""
    if Polarity(p) is Polarity.LIGHT_BACKGROUND:
        return ~mask
    return mask.copy()


def label_image(mask: np.ndarray) -> tuple[np.ndarray, int]:
    """4-connected label image; labels follow first encounter in row-major order."""
    labels, n = ndimage.label(mask, structure=_CROSS)
    if n == 0:
        return labels, 0
    flat = labels.ravel()
    ids, first = np.unique(flat, return_index=True)
    fg = ids > 0
    order = ids[fg][np.argsort(first[fg], kind="stable")]
    remap = np.zeros(n + 1, dtype=labels.dtype)
    remap[order] = np.arange(1, n + 1, dtype=labels.dtype)
    return remap[labels], n


def label_components(mask: np.ndarray) -> list[Component]:
    labels, n = label_image(mask)
    comps = []
    for lab, sl in enumerate(ndimage.find_objects(labels), start=1):
        if sl is None:
            continue
        sub = labels[sl] == lab
        ys, xs = sl
        comps.append(Component(
            label=lab,
            bbox=BBox(xs.start, ys.start, xs.stop - 1, ys.stop - 1),
            area=int(sub.sum()),
            mask=sub,
        ))
    return comps


def extract_characters(region_mask: np.ndarray, min_area: int = 4) -> list[Component]:
    """Components of at least ``min_area`` pixels, left to right (ties top to bottom)."""
    comps = [c for c in label_components(region_mask) if c.area >= min_area]
    comps.sort(key=lambda c: (c.bbox.x0, c.bbox.y0, c.label))
    return comps
