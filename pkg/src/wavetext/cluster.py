"""Subtractive clustering (Chiu's extension of Yager's mountain method).

Every point is a candidate centre. Its potential is a Gaussian-weighted
count of its neighbours; the densest point becomes a centre, the potential
field is reduced around it, and selection repeats until the remaining
potential is too small relative to the first centre.

Points are ``(N, 2)`` float arrays of ``(x, y)`` pixel coordinates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["ClusterParams", "potentials", "subtractive_cluster", "subsample", "mask_points"]

# rows of the pairwise-distance block; bounds memory at _CHUNK * N doubles
_CHUNK = 512


@dataclass
class ClusterParams:
    # None means 0.1 * image diagonal, resolved by the pipeline
    radius_a: float | None = None
    # None means 1.5 * radius_a (Chiu's squash factor)
    radius_b: float | None = None
    accept_ratio: float = 0.5
    reject_ratio: float = 0.15
    max_centers: int = 64
    max_points: int = 5000

    def __post_init__(self):
        if self.radius_a is not None and not self.radius_a > 0:
            raise ValueError(f"radius_a must be > 0, got {self.radius_a}")
        if self.radius_b is not None and self.radius_a is not None and self.radius_b < self.radius_a:
            raise ValueError(f"radius_b ({self.radius_b}) must be >= radius_a ({self.radius_a})")
        if not 0 < self.reject_ratio < self.accept_ratio <= 1:
            raise ValueError(
                f"need 0 < reject_ratio < accept_ratio <= 1, got {self.reject_ratio}, {self.accept_ratio}"
            )
        if self.max_centers < 1:
            raise ValueError(f"max_centers must be >= 1, got {self.max_centers}")
        if self.max_points < 1:
            raise ValueError(f"max_points must be >= 1, got {self.max_points}")

    def resolved(self, width: int, height: int) -> "ClusterParams":
        """Copy with the radii filled in for a ``width`` x ``height`` image."""
        ra = self.radius_a if self.radius_a is not None else 0.1 * math.hypot(width, height)
        rb = self.radius_b if self.radius_b is not None else 1.5 * ra
        return ClusterParams(ra, rb, self.accept_ratio, self.reject_ratio, self.max_centers, self.max_points)


def mask_points(mask: np.ndarray) -> np.ndarray:
    """Coordinates of true pixels as ``(x, y)`` rows in row-major order."""
    ys, xs = np.nonzero(mask)
    return np.column_stack((xs, ys)).astype(np.float64)


def subsample(pts: np.ndarray, max_points: int) -> np.ndarray:
    """Keep every k-th point, ``k = ceil(N / max_points)``, if there are too many."""
    if max_points < 1:
        raise ValueError(f"max_points must be >= 1, got {max_points}")
    n = len(pts)
    if n <= max_points:
        return pts
    return pts[:: -(-n // max_points)]


def potentials(pts: np.ndarray, radius_a: float) -> np.ndarray:
    pts = np.asarray(pts, dtype=np.float64).reshape(-1, 2)
    alpha = 4.0 / (radius_a * radius_a)
    x, y = pts[:, 0], pts[:, 1]
    out = np.empty(len(pts))
    for start in range(0, len(pts), _CHUNK):
        stop = start + _CHUNK
        # in-place on one block buffer; each row's sum is independent of chunking
        d2 = x[start:stop, None] - x[None, :]
        d2 *= d2
        dy = y[start:stop, None] - y[None, :]
        dy *= dy
        d2 += dy
        d2 *= -alpha
        np.exp(d2, out=d2)
        out[start:stop] = d2.sum(axis=1)
    return out


def subtractive_cluster(pts: np.ndarray, params: ClusterParams) -> np.ndarray:
    """Select cluster centres; returns a ``(K, 2)`` array in selection order.

    ``params.radius_a`` must be set (see :meth:`ClusterParams.resolved`).
    ``np.argmax`` returns the first maximum, which gives the lowest-index
    tie-break.
    """
    pts = np.asarray(pts, dtype=np.float64).reshape(-1, 2)
    if len(pts) == 0:
        return np.empty((0, 2))
    if params.radius_a is None:
        raise ValueError("radius_a unresolved; call ClusterParams.resolved() first")
    ra = params.radius_a
    rb = params.radius_b if params.radius_b is not None else 1.5 * ra
    beta = 4.0 / (rb * rb)

    pot = potentials(pts, ra)
    first = int(np.argmax(pot))
    p_first = float(pot[first])
    centers = [first]
    pot = pot - p_first * np.exp(-beta * ((pts - pts[first]) ** 2).sum(axis=1))

    while len(centers) < params.max_centers:
        k = int(np.argmax(pot))
        p = float(pot[k])
        if p < params.reject_ratio * p_first:
            break
        if p < params.accept_ratio * p_first:
            d_min = float(np.sqrt(((pts[centers] - pts[k]) ** 2).sum(axis=1)).min())
            if d_min / ra + p / p_first < 1.0:
                pot[k] = 0.0
                continue
        centers.append(k)
        pot = pot - p * np.exp(-beta * ((pts - pts[k]) ** 2).sum(axis=1))

    return pts[centers].copy()
