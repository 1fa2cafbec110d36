"""Synthetic page renderer: SWML + catalog assets -> raster page.

This is the recognition oracle generator (render a document, recognize it
back, compare) and also backs the editor's review overlays. Perturbation
options produce the degraded variants used to probe robustness: per-glyph
rotation jitter and additive Gaussian intensity noise, both seeded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..catalog import Catalog
from ..swml import SignDocument, compute_bbox, layout_column
from .pipeline import RecognitionResult
from .raster import RasterPage


@dataclass(frozen=True)
class PlacedGlyph:
    """Ground truth for one stamped glyph (top-left of the unrotated asset)."""

    sign_id: str
    code: str
    x: int
    y: int


def _rotate_mask(mask: np.ndarray, angle: float) -> np.ndarray:
    from PIL import Image

    img = Image.fromarray(np.where(mask, 255, 0).astype(np.uint8), mode="L")
    rotated = img.rotate(angle, resample=Image.NEAREST, expand=True, fillcolor=0)
    return np.asarray(rotated) > 127


def render_document(
    doc: SignDocument,
    catalog: Catalog,
    *,
    spacing: int = 48,
    column_gap: int = 48,
    margin: int = 16,
    noise_sigma: float = 0.0,
    jitter_deg: float = 0.0,
    seed: int = 0,
) -> tuple[RasterPage, list[PlacedGlyph]]:
    """Render columns of signs onto a white page; returns page + ground truth."""
    rng = np.random.default_rng(seed)
    boxes = {s.sign_id: compute_bbox(s, catalog) for s in doc.signs()}
    col_widths = [
        max((boxes[s.sign_id].width for s in column), default=0) for column in doc.columns
    ]
    col_heights = []
    offsets = []
    for column in doc.columns:
        layout = dict(layout_column(column, spacing, catalog))
        offsets.append(layout)
        if column:
            last = column[-1]
            col_heights.append(layout[last.sign_id] + boxes[last.sign_id].height)
        else:
            col_heights.append(0)

    width = 2 * margin + sum(col_widths) + column_gap * max(0, len(doc.columns) - 1)
    height = 2 * margin + max(col_heights, default=0)
    page = np.full((max(height, 1), max(width, 1)), 255, dtype=np.uint8)

    truth: list[PlacedGlyph] = []
    cursor_x = margin
    for column, col_width, layout in zip(doc.columns, col_widths, offsets):
        axis = cursor_x + col_width // 2
        for sign in column:
            box = boxes[sign.sign_id]
            origin_x = axis - box.width // 2
            origin_y = margin + layout[sign.sign_id]
            for p in sign.placements:
                gx = origin_x + p.x - box.min_x
                gy = origin_y + p.y - box.min_y
                mask = catalog.asset_mask(p.glyph)
                if jitter_deg > 0:
                    angle = float(rng.uniform(-jitter_deg, jitter_deg))
                    rotated = _rotate_mask(mask, angle)
                    cy = gy + mask.shape[0] / 2 - rotated.shape[0] / 2
                    cx = gx + mask.shape[1] / 2 - rotated.shape[1] / 2
                    _stamp(page, rotated, int(round(cx)), int(round(cy)))
                else:
                    _stamp(page, mask, gx, gy)
                truth.append(PlacedGlyph(sign.sign_id, p.glyph.code(), gx, gy))
        cursor_x += col_width + column_gap

    if noise_sigma > 0:
        noisy = page.astype(np.float64) + rng.normal(0.0, noise_sigma, page.shape)
        page = np.clip(np.rint(noisy), 0, 255).astype(np.uint8)
    return RasterPage(page), truth


def _stamp(page: np.ndarray, mask: np.ndarray, x: int, y: int) -> None:
    h, w = mask.shape
    y0, x0 = max(y, 0), max(x, 0)
    y1, x1 = min(y + h, page.shape[0]), min(x + w, page.shape[1])
    if y1 <= y0 or x1 <= x0:
        return
    sub = mask[y0 - y:y1 - y, x0 - x:x1 - x]
    page[y0:y1, x0:x1][sub] = 0


def draw_overlay(page: RasterPage, result: RecognitionResult):
    """RGB image with recognized boxes in green, unresolved blobs in red."""
    from PIL import Image, ImageDraw

    img = Image.fromarray(page.pixels, mode="L").convert("RGB")
    draw = ImageDraw.Draw(img)
    for r in result.recognized:
        draw.rectangle(
            [r.bbox.min_x - 1, r.bbox.min_y - 1, r.bbox.max_x, r.bbox.max_y],
            outline=(0, 160, 0),
        )
    for b in result.unresolved:
        draw.rectangle(
            [b.bbox.min_x - 1, b.bbox.min_y - 1, b.bbox.max_x, b.bbox.max_y],
            outline=(200, 0, 0),
        )
    return img
