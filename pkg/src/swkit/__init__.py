"""swkit: SignWriting digitization toolkit.

Library surface mirrors the CLI/service split: glyph codes and the ISWA
catalog, SWML sign documents, the structured corpus with co-occurrence
statistics, the predictive hint engine, and the optical glyph recognition
pipeline.
"""

from .codes import GlyphId, format_glyph_id, parse_glyph_id
from .catalog import (
    AnatomicRegion,
    Catalog,
    ChoiceBoxSpec,
    GlyphDescriptor,
    choice_boxes_for,
    filter_glyphs,
    glyphs_in,
    load_catalog,
    regions_for_puppet,
)

__version__ = "0.1.0"

__all__ = [
    "GlyphId",
    "parse_glyph_id",
    "format_glyph_id",
    "Catalog",
    "GlyphDescriptor",
    "AnatomicRegion",
    "ChoiceBoxSpec",
    "load_catalog",
    "glyphs_in",
    "regions_for_puppet",
    "choice_boxes_for",
    "filter_glyphs",
    "__version__",
]
