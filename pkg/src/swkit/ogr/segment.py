"""Group recognized glyphs into columns, then split columns into signs."""

from __future__ import annotations

from dataclasses import dataclass
from statistics import median
from typing import TYPE_CHECKING

from ..swml import Box, GlyphPlacement, Sign
from .components import union_box

if TYPE_CHECKING:
    from .pipeline import RecognizedGlyph, RecognizerConfig


@dataclass
class SignDraft:
    sign_id: str
    column: int
    origin: tuple[int, int]          # page coordinates of the sign bbox min
    glyph_indices: list[int]         # into RecognitionResult.recognized
    sign: Sign                       # local (normalized) coordinates


def _columns(recognized: list["RecognizedGlyph"], join_gap: int) -> list[list[int]]:
    """Cluster glyph indices into columns by x-interval adjacency."""
    order = sorted(range(len(recognized)), key=lambda i: recognized[i].bbox.min_x)
    columns: list[tuple[int, int, list[int]]] = []  # (min_x, max_x, members)
    for i in order:
        box = recognized[i].bbox
        if columns and box.min_x - columns[-1][1] <= join_gap:
            lo, hi, members = columns[-1]
            columns[-1] = (lo, max(hi, box.max_x), members + [i])
        else:
            columns.append((box.min_x, box.max_x, [i]))
    return [members for _, _, members in columns]


def _split_points(boxes: list[Box], config: "RecognizerConfig") -> list[int]:
    """Indices where a new sign starts, given top-sorted boxes of one column."""
    gaps = []
    bottom = boxes[0].max_y
    for box in boxes[1:]:
        gaps.append(max(0, box.min_y - bottom))
        bottom = max(bottom, box.max_y)
    if not gaps:
        return []
    center = config.gap_multiplier * median(gaps)
    threshold = max(config.gap_floor, min(center, config.gap_cap))
    return [i + 1 for i, g in enumerate(gaps) if g > threshold]


def segment_signs(
    recognized: list["RecognizedGlyph"], config: "RecognizerConfig"
) -> list[SignDraft]:
    """Column clustering by x-adjacency, sign splits at large vertical gaps.

    The split threshold is gap_multiplier x median intra-column gap, clamped
    to [gap_floor, gap_cap] so that columns of uniformly spaced single-glyph
    signs still separate.
    """
    drafts: list[SignDraft] = []
    counter = 0
    for col_index, members in enumerate(_columns(recognized, config.column_join_gap)):
        members = sorted(members, key=lambda i: (recognized[i].bbox.min_y,
                                                 recognized[i].bbox.min_x))
        boxes = [recognized[i].bbox
                 for i in members]
        starts = [0] + _split_points(boxes, config) + [len(members)]
        for a, b in zip(starts, starts[1:]):
            chunk = members[a:b]
            counter += 1
            origin_box = union_box([recognized[i].bbox for i in chunk])
            placements = [
                GlyphPlacement(
                    glyph=recognized[i].glyph,
                    x=recognized[i].bbox.min_x - origin_box.min_x,
                    y=recognized[i].bbox.min_y - origin_box.min_y,
                    z=z,
                )
                for z, i in enumerate(chunk)
            ]
            drafts.append(
                SignDraft(
                    sign_id=f"s{counter}",
                    column=col_index,
                    origin=(origin_box.min_x, origin_box.min_y),
                    glyph_indices=list(chunk),
                    sign=Sign(sign_id=f"s{counter}", placements=placements, source="ogr"),
                )
            )
    return drafts
