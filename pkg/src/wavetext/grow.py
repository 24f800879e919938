"""Rectangle growing around cluster centroids, shrink-wrap and box merging."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "BBox",
    "GrowParams",
    "CountTable",
    "grow_region",
    "grow_region_steps",
    "shrink_wrap",
    "merge_boxes",
]


class BBox(NamedTuple):
    """Inclusive pixel rectangle."""

    x0: int
    y0: int
    x1: int
    y1: int

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1

    @property
    def area(self) -> int:
        return self.width * self.height

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1

    def touches(self, other: "BBox") -> bool:
        """True if the rectangles overlap or share an edge."""
        return (
            self.x0 <= other.x1 + 1
            and other.x0 <= self.x1 + 1
            and self.y0 <= other.y1 + 1
            and other.y0 <= self.y1 + 1
        )

    def union(self, other: "BBox") -> "BBox":
        return BBox(min(self.x0, other.x0), min(self.y0, other.y0), max(self.x1, other.x1), max(self.y1, other.y1))

    def slices(self) -> tuple[slice, slice]:
        return slice(self.y0, self.y1 + 1), slice(self.x0, self.x1 + 1)

    def as_dict(self) -> dict[str, int]:
        return {"x0": int(self.x0), "y0": int(self.y0), "x1": int(self.x1), "y1": int(self.y1)}


@dataclass
class GrowParams:
    grow_step: int = 2
    stop_percent: float = 5.0
    min_box_w: int = 8
    min_box_h: int = 8

    def __post_init__(self):
        if self.grow_step < 1:
            raise ValueError(f"grow_step must be >= 1, got {self.grow_step}")
        if not 0 < self.stop_percent < 100:
            raise ValueError(f"stop_percent must be in (0, 100), got {self.stop_percent}")
        if self.min_box_w < 1 or self.min_box_h < 1:
            raise ValueError(f"minimum box size must be >= 1x1, got {self.min_box_w}x{self.min_box_h}")


class CountTable:
    """Summed-area table: true-pixel count of any box in O(1)."""

    def __init__(self, mask: np.ndarray):
        self.height, self.width = mask.shape
        self._sat = np.zeros((self.height + 1, self.width + 1), dtype=np.int64)
        self._sat[1:, 1:] = mask.astype(np.int64).cumsum(axis=0).cumsum(axis=1)

    def count(self, box: BBox) -> int:
        s = self._sat
        return int(s[box.y1 + 1, box.x1 + 1] - s[box.y0, box.x1 + 1] - s[box.y1 + 1, box.x0] + s[box.y0, box.x0])


def _clamp(box: BBox, width: int, height: int) -> BBox:
    return BBox(max(box.x0, 0), max(box.y0, 0), min(box.x1, width - 1), min(box.y1, height - 1))


def grow_region_steps(mask, c, params: GrowParams) -> tuple[BBox | None, int]:
    """Grow a box around centroid ``c = (x, y)``; also return the expansion count.

    ``mask`` may be a bool array or a prebuilt :class:`CountTable`.
    """
    table = mask if isinstance(mask, CountTable) else CountTable(mask)
    w, h = table.width, table.height
    cx, cy = c
    if not (0 <= cx <= w - 1 and 0 <= cy <= h - 1):
        raise ValueError(f"centroid {c} outside {w}x{h} mask")
    # round half up; clamp so the 2x2 seed stays inside the image
    sx = min(int(np.floor(cx + 0.5)), max(w - 2, 0))
    sy = min(int(np.floor(cy + 0.5)), max(h - 2, 0))
    box = _clamp(BBox(sx, sy, sx + 1, sy + 1), w, h)
    full = BBox(0, 0, w - 1, h - 1)
    old = table.count(box)
    step = params.grow_step
    iterations = 0
    while box != full:
        box = _clamp(BBox(box.x0 - step, box.y0 - step, box.x1 + step, box.y1 + step), w, h)
        iterations += 1
        new = table.count(box)
        if new == 0:
            return None, iterations
        if (new - old) * 100.0 / new < params.stop_percent:
            break
        old = new
    if iterations == 0 and old == 0:
        return None, 0
    return box, iterations


def grow_region(mask, c, params: GrowParams) -> BBox | None:
    """Expand a 2x2 seed at ``c`` until the text-pixel gain drops below ``stop_percent``."""
    return grow_region_steps(mask, c, params)[0]


def shrink_wrap(mask: np.ndarray, box: BBox) -> BBox | None:
    sub = mask[box.slices()]
    rows = np.flatnonzero(sub.any(axis=1))
    if rows.size == 0:
        return None
    cols = np.flatnonzero(sub.any(axis=0))
    return BBox(box.x0 + int(cols[0]), box.y0 + int(rows[0]), box.x0 + int(cols[-1]), box.y0 + int(rows[-1]))


def merge_boxes(boxes, min_w: int = 1, min_h: int = 1) -> list[BBox]:
    """Union touching/overlapping boxes to a fixpoint, drop small ones, sort by (y0, x0)."""
    pending = [BBox(*b) for b in boxes]
    merged: list[BBox] = []
    while pending:
        cur = pending.pop()
        absorbed = True
        while absorbed:
            absorbed = False
            rest = []
            for other in merged:
                if cur.touches(other):
                    cur = cur.union(other)
                    absorbed = True
                else:
                    rest.append(other)
            merged = rest
        merged.append(cur)
    kept = [b for b in merged if b.width >= min_w and b.height >= min_h]
    return sorted(kept, key=lambda b: (b.y0, b.x0, b.y1, b.x1))
