"""Optical glyph recognition: raster pages in, reviewed SWML documents out."""

from .classify import classify, template_index
from .components import ComponentBlob, candidate_mask, extract_components, group_blobs
from .features import FeatureVector, extract_features, skeletonize
from .pipeline import (
    RecognitionResult,
    RecognizedGlyph,
    RecognizerConfig,
    recognize,
    report_bytes,
    report_to_result,
    result_to_report,
)
from .raster import RasterPage, binarize, otsu_threshold
from .render import PlacedGlyph, draw_overlay, render_document
from .review import ReviewEdit, ReviewOutcome, apply_review
from .segment import SignDraft, segment_signs

__all__ = [
    "RasterPage",
    "binarize",
    "otsu_threshold",
    "ComponentBlob",
    "extract_components",
    "group_blobs",
    "candidate_mask",
    "FeatureVector",
    "extract_features",
    "skeletonize",
    "classify",
    "template_index",
    "SignDraft",
    "segment_signs",
    "RecognizerConfig",
    "RecognizedGlyph",
    "RecognitionResult",
    "recognize",
    "result_to_report",
    "report_to_result",
    "report_bytes",
    "ReviewEdit",
    "ReviewOutcome",
    "apply_review",
    "PlacedGlyph",
    "render_document",
    "draw_overlay",
]
