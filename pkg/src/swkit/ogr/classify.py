"""Glyph classification: ISWA-structure gating plus template matching.

Stage 1 prunes (category, group) scopes whose catalog-wide feature ranges
(hole count, fill ratio, aspect) cannot produce the candidate — the glyph
taxonomy doing the work of a search index. Stage 2 scores the candidate
against every surviving template: Jaccard overlap on a common 32x32 grid
(which aligns centroids and removes scale) damped by raw bbox size
similarity, so a rotated-or-degraded stroke still prefers its own variant
over a resized cousin. Rotation variants are distinct catalog entries, so
matching the surviving set covers the discrete rotations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ..catalog import Catalog
from ..codes import GlyphId
from ..errors import NoCandidates
from ..glyphart import scale_normalize
from .components import EIGHT
from .features import FeatureVector, euler_number

NORM_SIZE = 32

# gating slack: generous enough that degraded input never loses its own
# group, tight enough to prune structurally different categories
HOLE_SLACK = 1
FILL_SLACK = 0.15
ASPECT_SLACK = 1.6


@dataclass(frozen=True)
class _GroupStats:
    hole_min: int
    hole_max: int
    fill_min: float
    fill_max: float
    aspect_min: float
    aspect_max: float

    def admits(self, f: FeatureVector) -> bool:
        return (
            self.hole_min - HOLE_SLACK <= f.hole_count <= self.hole_max + HOLE_SLACK
            and self.fill_min - FILL_SLACK <= f.fill_ratio <= self.fill_max + FILL_SLACK
            and self.aspect_min / ASPECT_SLACK
            <= f.aspect_ratio
            <= self.aspect_max * ASPECT_SLACK
        )


class TemplateIndex:
    """Per-catalog template grids and group feature ranges."""

    def __init__(self, catalog: Catalog):
        self.ids: list[GlyphId] = catalog.all_ids()
        grids = []
        sizes = []
        simple: dict[GlyphId, tuple[int, float, float]] = {}
        for gid in self.ids:
            mask = catalog.asset_mask(gid)
            grids.append(scale_normalize(mask, NORM_SIZE))
            h, w = mask.shape
            sizes.append((w, h))
            _, n_comp = ndimage.label(mask, structure=EIGHT)
            holes = n_comp - euler_number(mask)
            simple[gid] = (holes, mask.sum() / (w * h), w / h)
        self.grids = np.stack(grids)  # (n, NORM_SIZE, NORM_SIZE)
        self.sizes = np.array(sizes, dtype=np.float64)  # (n, 2) width, height
        self.group_of = np.array([[g.category, g.group] for g in self.ids])
        self.group_stats: dict[tuple[int, int], _GroupStats] = {}
        by_group: dict[tuple[int, int], list[GlyphId]] = {}
        for gid in self.ids:
            by_group.setdefault((gid.category, gid.group), []).append(gid)
        for scope, members in by_group.items():
            feats = [simple[g] for g in members]
            self.group_stats[scope] = _GroupStats(
                hole_min=min(f[0] for f in feats),
                hole_max=max(f[0] for f in feats),
                fill_min=min(f[1] for f in feats),
                fill_max=max(f[1] for f in feats),
                aspect_min=min(f[2] for f in feats),
                aspect_max=max(f[2] for f in feats),
            )


def template_index(catalog: Catalog) -> TemplateIndex:
    index = getattr(catalog, "_template_index", None)
    if index is None:
        index = TemplateIndex(catalog)
        catalog._template_index = index
    return index


def classify(
    features: FeatureVector,
    candidate: np.ndarray,
    catalog: Catalog,
    max_results: int | None = None,
) -> list[tuple[GlyphId, float]]:
    """Ranked (glyph id, confidence) for a cropped candidate mask.

    Raises NoCandidates when the candidate is blank or feature gating prunes
    every scope; recognize() turns that into an unresolved blob.
    """
    mask = np.asarray(candidate, dtype=bool)
    if not mask.any():
        raise NoCandidates("blank candidate")
    index = template_index(catalog)
    admitted = {scope for scope, stats in index.group_stats.items() if stats.admits(features)}
    if not admitted:
        raise NoCandidates("feature gating pruned every scope")
    keep = np.array([(c, g) in admitted for c, g in index.group_of])

    grid = scale_normalize(mask, NORM_SIZE)
    grids = index.grids[keep]
    inter = (grids & grid).sum(axis=(1, 2))
    union = (grids | grid).sum(axis=(1, 2))
    jaccard = inter / np.maximum(union, 1)

    h, w = mask.shape
    sizes = index.sizes[keep]
    size_sim = (
        np.minimum(sizes[:, 0], w) / np.maximum(sizes[:, 0], w)
        * (np.minimum(sizes[:, 1], h) / np.maximum(sizes[:, 1], h))
    )
    scores = jaccard * size_sim

    kept_ids = [gid for gid, k in zip(index.ids, keep) if k]
    ranked = sorted(zip(kept_ids, scores), key=lambda t: (-t[1], t[0]))
    if max_results is not None:
        ranked = ranked[:max_results]
    return [(gid, float(s)) for gid, s in ranked]
