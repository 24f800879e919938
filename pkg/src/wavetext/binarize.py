"""Otsu thresholding of region crops."""

from __future__ import annotations

import numpy as np

from .grow import BBox

__all__ = ["histogram", "between_class_scores", "otsu_threshold", "apply_threshold"]


def histogram(img: np.ndarray, box: BBox) -> np.ndarray:
    """256-bin intensity counts of the pixels inside ``box``."""
    return np.bincount(img[box.slices()].ravel(), minlength=256).astype(np.int64)


def between_class_scores(counts) -> list[tuple[int, int]]:
    """Between-class variance of every split, as exact ``(num, den)`` pairs.

    For split ``t`` (class 0 is ``v <= t``) with ``n0`` pixels summing to
    ``s0`` out of ``n`` summing to ``s``, the variance is
    ``(s0*n - s*n0)**2 / (n**2 * n0 * n1)``. The common ``n**2`` is dropped; an
    empty class scores ``(0, 1)``. Python ints keep the comparison exact.
    """
    counts = [int(c) for c in counts]
    if len(counts) != 256:
        raise ValueError(f"expected 256 bins, got {len(counts)}")
    n = sum(counts)
    s = sum(v * c for v, c in enumerate(counts))
    scores = []
    n0 = s0 = 0
    for v, c in enumerate(counts):
        n0 += c
        s0 += v * c
        n1 = n - n0
        if n0 == 0 or n1 == 0:
            scores.append((0, 1))
        else:
            diff = s0 * n - s * n0
            scores.append((diff * diff, n0 * n1))
    return scores


def otsu_threshold(counts) -> int:
    """Threshold maximising between-class variance; the smallest such t on ties."""
    if sum(int(c) for c in counts) < 1:
        raise ValueError("otsu_threshold needs a non-empty histogram")
    best_t, (best_num, best_den) = 0, (0, 1)
    for t, (num, den) in enumerate(between_class_scores(counts)):
        if num * best_den > best_num * den:
            best_t, best_num, best_den = t, num, den
    return best_t


def apply_threshold(img: np.ndarray, box: BBox, t: int) -> np.ndarray:
    """Mask of the crop, true where intensity is strictly above ``t``."""
    return img[box.slices()] > t
