"""The full recognition pipeline and its serialized report form."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from ..canonical import canonical_json
from ..catalog import Catalog
from ..codes import GlyphId, parse_glyph_id
from ..errors import NoCandidates
from ..swml import Box
from .classify import classify
from .components import ComponentBlob, candidate_mask, extract_components, group_blobs
from .features import extract_features
from .raster import RasterPage, binarize
from .segment import SignDraft, segment_signs

REPORT_FORMAT = "swkit-ogr-report"
REPORT_VERSION = 1


@dataclass(frozen=True)
class RecognizerConfig:
    binarize_method: str = "otsu"
    threshold: int | None = None
    polarity: str = "auto"
    min_blob_area: int = 4
    grouping_proximity: int = 6
    max_glyph_size: int = 128
    min_confidence: float = 0.4
    max_alternates: int = 3
    gap_multiplier: float = 1.5
    gap_floor: int = 12
    gap_cap: int = 24
    column_join_gap: int = 24

    @classmethod
    def from_file(cls, path: str | Path) -> "RecognizerConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        return cls(**data)


@dataclass(frozen=True)
class RecognizedGlyph:
    glyph: GlyphId
    bbox: Box                       # page coordinates
    confidence: float
    alternates: tuple[GlyphId, ...] = ()
    blob_count: int = 1             # blobs merged into this glyph


@dataclass
class RecognitionResult:
    page_width: int
    page_height: int
    recognized: list[RecognizedGlyph] = field(default_factory=list)
    unresolved: list[ComponentBlob] = field(default_factory=list)
    signs: list[SignDraft] = field(default_factory=list)
    total_blobs: int = 0

    def assigned_blobs(self) -> int:
        return sum(r.blob_count for r in self.recognized)


def recognize(
    page: RasterPage, catalog: Catalog, config: RecognizerConfig | None = None
) -> RecognitionResult:
    """binarize -> components -> grouping -> features -> classify -> segment.

    Deterministic in (page, catalog, config). Every extracted blob ends up
    either merged into a recognized glyph or listed as unresolved.
    """
    config = config or RecognizerConfig()
    foreground = binarize(
        page, method=config.binarize_method, threshold=config.threshold,
        polarity=config.polarity,
    )
    blobs = extract_components(foreground, min_area=config.min_blob_area)
    result = RecognitionResult(page.width, page.height, total_blobs=len(blobs))
    if not blobs:
        return result
    candidates = group_blobs(blobs, config.grouping_proximity, config.max_glyph_size)
    for members in candidates:
        mask, box = candidate_mask(members)
        try:
            ranked = classify(extract_features(mask), mask, catalog,
                              max_results=config.max_alternates + 1)
        except NoCandidates:
            result.unresolved.extend(members)
            continue
        best_id, best_score = ranked[0]
        if best_score < config.min_confidence:
            result.unresolved.extend(members)
            continue
        result.recognized.append(
            RecognizedGlyph(
                glyph=best_id,
                bbox=box,
                confidence=best_score,
                alternates=tuple(gid for gid, _ in ranked[1:]),
                blob_count=len(members),
            )
        )
    result.signs = segment_signs(result.recognized, config)
    return result


# --- sidecar report (serialized RecognitionResult) ---


def _box_list(box: Box) -> list[int]:
    return [box.min_x, box.min_y, box.max_x, box.max_y]


def result_to_report(result: RecognitionResult) -> dict:
    return {
        "format": REPORT_FORMAT,
        "version": REPORT_VERSION,
        "page": {"width": result.page_width, "height": result.page_height},
        "total_blobs": result.total_blobs,
        "recognized": [
            {
                "code": r.glyph.code(),
                "bbox": _box_list(r.bbox),
                "confidence": round(r.confidence, 6),
                "alternates": [a.code() for a in r.alternates],
                "blob_count": r.blob_count,
            }
            for r in result.recognized
        ],
        "unresolved": [
            {
                "bbox": _box_list(b.bbox),
                "area": b.area,
                "centroid": [round(b.centroid[0], 2), round(b.centroid[1], 2)],
            }
            for b in result.unresolved
        ],
        "signs": [
            {
                "sign_id": d.sign_id,
                "column": d.column,
                "origin": list(d.origin),
                "glyph_indices": d.glyph_indices,
            }
            for d in result.signs
        ],
    }


def report_to_result(report: dict) -> RecognitionResult:
    """Rebuild a result from its report; blob pixel masks are not retained."""
    if report.get("format") != REPORT_FORMAT or report.get("version") != REPORT_VERSION:
        raise ValueError("not a recognition report")
    recognized = [
        RecognizedGlyph(
            glyph=parse_glyph_id(r["code"]),
            bbox=Box(*r["bbox"]),
            confidence=float(r["confidence"]),
            alternates=tuple(parse_glyph_id(a) for a in r["alternates"]),
            blob_count=int(r["blob_count"]),
        )
        for r in report["recognized"]
    ]
    unresolved = [
        ComponentBlob(
            bbox=Box(*b["bbox"]),
            area=int(b["area"]),
            centroid=(float(b["centroid"][0]), float(b["centroid"][1])),
        )
        for b in report["unresolved"]
    ]
    result = RecognitionResult(
        page_width=int(report["page"]["width"]),
        page_height=int(report["page"]["height"]),
        recognized=recognized,
        unresolved=unresolved,
        total_blobs=int(report["total_blobs"]),
    )
    from ..swml import GlyphPlacement, Sign
    from .components import union_box

    for d in report["signs"]:
        indices = [int(i) for i in d["glyph_indices"]]
        origin_box = union_box([recognized[i].bbox for i in indices])
        placements = [
            GlyphPlacement(
                glyph=recognized[i].glyph,
                x=recognized[i].bbox.min_x - origin_box.min_x,
                y=recognized[i].bbox.min_y - origin_box.min_y,
                z=z,
            )
            for z, i in enumerate(indices)
        ]
        result.signs.append(
            SignDraft(
                sign_id=d["sign_id"],
                column=int(d["column"]),
                origin=(int(d["origin"][0]), int(d["origin"][1])),
                glyph_indices=indices,
                sign=Sign(sign_id=d["sign_id"], placements=placements, source="ogr"),
            )
        )
    return result


def report_bytes(result: RecognitionResult) -> bytes:
    return canonical_json(result_to_report(result))
