"""Geometric and topological features of glyph candidates.

hole_count comes from the Euler number (components - holes), computed by
2x2 bit-quad counting under 8-connectivity; the skeleton comes from
Zhang-Suen thinning. Both are stable under 90-degree rotation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .components import EIGHT


@dataclass(frozen=True)
class FeatureVector:
    hole_count: int
    aspect_ratio: float        # width / height of the bbox
    fill_ratio: float          # ink area / bbox area
    compactness: float         # perimeter^2 / area
    skeleton_endpoints: int
    skeleton_junctions: int
    principal_orientation: float  # radians in (-pi/2, pi/2], y grows downward
    symmetry_h: float          # overlap with left-right mirror, in [0, 1]
    symmetry_v: float          # overlap with top-bottom mirror, in [0, 1]


def euler_number(mask: np.ndarray) -> int:
    """Euler characteristic (8-connected foreground) via bit-quad counts."""
    padded = np.pad(mask, 1).astype(np.int8)
    q = (
        padded[:-1, :-1]
        + padded[:-1, 1:] * 2
        + padded[1:, :-1] * 4
        + padded[1:, 1:] * 8
    )
    counts = np.bincount(q.ravel(), minlength=16)
    q1 = counts[1] + counts[2] + counts[4] + counts[8]
    q3 = counts[7] + counts[11] + counts[13] + counts[14]
    qd = counts[6] + counts[9]
    # chi_8 = (Q1 - Q3 - 2*QD) / 4
    return int(q1 - q3 - 2 * qd) // 4


def perimeter_pixels(mask: np.ndarray) -> int:
    """Foreground pixels 4-adjacent to background or the image border."""
    padded = np.pad(mask, 1)
    interior = (
        padded[:-2, 1:-1] & padded[2:, 1:-1] & padded[1:-1, :-2] & padded[1:-1, 2:]
    )
    return int((mask & ~interior).sum())


_NEIGHBOR_ORDER = ((-1, 0), (-1, 1), (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1))


def _neighbors(padded: np.ndarray) -> list[np.ndarray]:
    return [padded[1 + dy:padded.shape[0] - 1 + dy, 1 + dx:padded.shape[1] - 1 + dx]
            for dy, dx in _NEIGHBOR_ORDER]


def skeletonize(mask: np.ndarray) -> np.ndarray:
    """Zhang-Suen thinning to a 1-pixel-wide skeleton."""
    img = mask.astype(bool).copy()
    changed = True
    while changed:
        changed = False
        for step in (0, 1):
            padded = np.pad(img, 1)
            p = _neighbors(padded)  # P2..P9 clockwise from north
            b = sum(n.astype(np.int8) for n in p)
            ring = p + [p[0]]
            a = sum((~ring[i] & ring[i + 1]) for i in range(8)).astype(np.int8)
            if step == 0:
                cond = (~p[0] | ~p[2] | ~p[4]) & (~p[2] | ~p[4] | ~p[6])
            else:
                cond = (~p[0] | ~p[2] | ~p[6]) & (~p[0] | ~p[4] | ~p[6])
            remove = img & (b >= 2) & (b <= 6) & (a == 1) & cond
            if remove.any():
                img &= ~remove
                changed = True
    return img


def skeleton_nodes(skeleton: np.ndarray) -> tuple[int, int]:
    """(endpoints, junctions) by 8-neighbor counting on the skeleton."""
    padded = np.pad(skeleton, 1)
    count = sum(n.astype(np.int8) for n in _neighbors(padded))
    endpoints = int((skeleton & (count == 1)).sum())
    junctions = int((skeleton & (count >= 3)).sum())
    return endpoints, junctions


def principal_orientation(mask: np.ndarray) -> float:
    ys, xs = np.nonzero(mask)
    y = ys - ys.mean()
    x = xs - xs.mean()
    mu20 = float((x * x).sum())
    mu02 = float((y * y).sum())
    mu11 = float((x * y).sum())
    return 0.5 * math.atan2(2.0 * mu11, mu20 - mu02)


def extract_features(candidate: np.ndarray) -> FeatureVector:
    """Features of a cropped candidate ink mask."""
    mask = np.asarray(candidate, dtype=bool)
    if not mask.any():
        raise ValueError("empty candidate")
    h, w = mask.shape
    area = int(mask.sum())
    _, n_components = ndimage.label(mask, structure=EIGHT)
    holes = n_components - euler_number(mask)
    perim = perimeter_pixels(mask)
    skel = skeletonize(mask)
    endpoints, junctions = skeleton_nodes(skel)
    return FeatureVector(
        hole_count=int(holes),
        aspect_ratio=w / h,
        fill_ratio=area / (w * h),
        compactness=(perim * perim) / area,
        skeleton_endpoints=endpoints,
        skeleton_junctions=junctions,
        principal_orientation=principal_orientation(mask),
        symmetry_h=float((mask & mask[:, ::-1]).sum() / area),
        symmetry_v=float((mask & mask[::-1, :]).sum() / area),
    )
