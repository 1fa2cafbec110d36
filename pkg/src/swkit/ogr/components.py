"""Connected components and multi-stroke glyph grouping."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from ..swml import Box

EIGHT = np.ones((3, 3), dtype=int)


@dataclass(frozen=True)
class ComponentBlob:
    bbox: Box                     # pixel bounds, max exclusive
    area: int
    centroid: tuple[float, float]  # (x, y)
    mask: np.ndarray | None = None  # cropped to bbox; None when deserialized

    def __eq__(self, other) -> bool:  # masks compare by content
        if not isinstance(other, ComponentBlob):
            return NotImplemented
        if (self.bbox, self.area, self.centroid) != (other.bbox, other.area, other.centroid):
            return False
        if self.mask is None or other.mask is None:
            return (self.mask is None) == (other.mask is None)
        return bool(np.array_equal(self.mask, other.mask))

    def __hash__(self) -> int:
        return hash((self.bbox, self.area, self.centroid))


def extract_components(binary: np.ndarray, min_area: int = 4) -> list[ComponentBlob]:
    """8-connected components, noise below min_area discarded, top-left order."""
    labels, n = ndimage.label(binary, structure=EIGHT)
    blobs: list[ComponentBlob] = []
    for index, sl in enumerate(ndimage.find_objects(labels), start=1):
        if sl is None:
            continue
        region = labels[sl] == index
        area = int(region.sum())
        if area < min_area:
            continue
        y0, x0 = sl[0].start, sl[1].start
        ys, xs = np.nonzero(region)
        blobs.append(
            ComponentBlob(
                bbox=Box(x0, y0, x0 + region.shape[1], y0 + region.shape[0]),
                area=area,
                centroid=(float(x0 + xs.mean()), float(y0 + ys.mean())),
                mask=region,
            )
        )
    blobs.sort(key=lambda b: (b.bbox.min_y, b.bbox.min_x))
    return blobs


def box_gap(a: Box, b: Box) -> int:
    """Chebyshev bbox gap: empty rows/columns separating the boxes (0 if touching)."""
    hgap = max(b.min_x - a.max_x, a.min_x - b.max_x, 0)
    vgap = max(b.min_y - a.max_y, a.min_y - b.max_y, 0)
    return max(hgap, vgap)


def union_box(boxes: list[Box]) -> Box:
    return Box(
        min(b.min_x for b in boxes),
        min(b.min_y for b in boxes),
        max(b.max_x for b in boxes),
        max(b.max_y for b in boxes),
    )


def group_blobs(
    blobs: list[ComponentBlob], proximity: int, max_glyph_size: int | None = None
) -> list[list[ComponentBlob]]:
    """Merge blobs into glyph candidates (dots, diacritics, broken strokes).

    Greedy agglomeration in top-left order: a candidate absorbs any blob
    whose bbox gap to a member is <= proximity, provided the union bbox
    stays within max_glyph_size. With no size cap this is exactly
    single-linkage clustering at the proximity cutoff.
    """
    if proximity < 0:
        raise ValueError("proximity must be >= 0")
    ordered = sorted(blobs, key=lambda b: (b.bbox.min_y, b.bbox.min_x))
    unused = list(ordered)
    candidates: list[list[ComponentBlob]] = []
    while unused:
        seed = unused.pop(0)
        members = [seed]
        box = seed.bbox
        grew = True
        while grew:
            grew = False
            for blob in list(unused):
                if all(box_gap(blob.bbox, m.bbox) > proximity for m in members):
                    continue
                candidate_box = union_box([box, blob.bbox])
                if max_glyph_size is not None and (
                    candidate_box.width > max_glyph_size
                    or candidate_box.height > max_glyph_size
                ):
                    continue
                members.append(blob)
                unused.remove(blob)
                box = candidate_box
                grew = True
        candidates.append(members)
    candidates.sort(key=lambda ms: (union_box([m.bbox for m in ms]).min_y,
                                    union_box([m.bbox for m in ms]).min_x))
    return candidates


def candidate_mask(members: list[ComponentBlob]) -> tuple[np.ndarray, Box]:
    """Union ink mask of a candidate, cropped to its union bbox."""
    box = union_box([m.bbox for m in members])
    mask = np.zeros((box.height, box.width), dtype=bool)
    for m in members:
        if m.mask is None:
            raise ValueError("candidate blob carries no pixel mask")
        y0 = m.bbox.min_y - box.min_y
        x0 = m.bbox.min_x - box.min_x
        mask[y0:y0 + m.mask.shape[0], x0:x0 + m.mask.shape[1]] |= m.mask
    return mask, box
