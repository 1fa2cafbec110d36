"""SWML sign documents: coordinate-placed glyphs, signs, vertical columns.

The on-disk form is an XML dialect (schema frozen in docs/swml.xsd). Parsing
and serialization round-trip bit-exactly: ``serialize_swml`` emits one
canonical byte form (stable element/attribute order, placements sorted by
(z, y, x, code), UTF-8, 2-space indent) and ``parse_swml`` accepts any
schema-conforming document.

Sign space is the integer grid [0, 4096) x [0, 4096), origin top-left,
y growing downward. All operations are pure.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field, replace

from .catalog import Catalog
from .codes import GlyphId, format_glyph_id, parse_glyph_id
from .errors import (
    BadCode,
    BadCoordinate,
    InvariantViolation,
    MalformedCode,
    FieldOutOfRange,
    MalformedDocument,
    SchemaViolation,
)

SIGN_SPACE = 4096
SWML_VERSION = "1"
SIGN_SOURCES = ("editor", "ogr", "import")

_META_ATTRS = ("title", "lang", "author", "created", "modified")


@dataclass(frozen=True, order=True)
class GlyphPlacement:
    glyph: GlyphId
    x: int
    y: int
    z: int = 0

    def sort_key(self) -> tuple[int, int, int, GlyphId]:
        return (self.z, self.y, self.x, self.glyph)

    def translated(self, dx: int, dy: int) -> "GlyphPlacement":
        return replace(self, x=self.x + dx, y=self.y + dy)


def _canonical_placements(placements: list[GlyphPlacement]) -> list[GlyphPlacement]:
    return sorted(placements, key=GlyphPlacement.sort_key)


@dataclass
class Sign:
    sign_id: str
    placements: list[GlyphPlacement]
    gloss_labels: list[str] = field(default_factory=list)
    source: str = "editor"

    def __post_init__(self) -> None:
        # placement order carries no meaning beyond z (draw order), so the
        # list is kept in canonical order; this is what makes serialization
        # round-trips structurally exact
        self.placements = _canonical_placements(self.placements)

    def glyph_ids(self) -> set[GlyphId]:
        return {p.glyph for p in self.placements}

    def validate(self) -> None:
        if not self.sign_id:
            raise InvariantViolation("sign with empty id")
        if self.source not in SIGN_SOURCES:
            raise InvariantViolation(f"bad sign source {self.source!r}")
        if not self.placements:
            raise InvariantViolation(f"sign {self.sign_id!r} has no placements")
        seen = set()
        for p in self.placements:
            if not (0 <= p.x < SIGN_SPACE and 0 <= p.y < SIGN_SPACE):
                raise InvariantViolation(
                    f"sign {self.sign_id!r}: placement ({p.x},{p.y}) out of sign space"
                )
            key = (p.glyph, p.x, p.y)
            if key in seen:
                raise InvariantViolation(
                    f"sign {self.sign_id!r}: duplicate placement {p.glyph} at ({p.x},{p.y})"
                )
            seen.add(key)


@dataclass
class DocMeta:
    title: str | None = None
    lang: str | None = None
    author: str | None = None
    created: str | None = None
    modified: str | None = None


@dataclass
class SignDocument:
    meta: DocMeta = field(default_factory=DocMeta)
    columns: list[list[Sign]] = field(default_factory=list)

    def signs(self) -> list[Sign]:
        return [s for column in self.columns for s in column]

    def validate(self) -> None:
        seen: set[str] = set()
        for sign in self.signs():
            sign.validate()
            if sign.sign_id in seen:
                raise InvariantViolation(f"duplicate sign id {sign.sign_id!r}")
            seen.add(sign.sign_id)


# --- parse ---


def _require_int(value: str, what: str) -> int:
    try:
        return int(value, 10)
    except (TypeError, ValueError):
        raise BadCoordinate(f"{what} is not an integer: {value!r}") from None


def _parse_glyph_el(el: ET.Element, sign_id: str) -> GlyphPlacement:
    allowed = {"code", "x", "y", "z"}
    extra = set(el.attrib) - allowed
    if extra:
        raise SchemaViolation(f"glyph element has unknown attributes {sorted(extra)}")
    for attr in ("code", "x", "y"):
        if attr not in el.attrib:
            raise SchemaViolation(f"glyph element missing {attr!r} in sign {sign_id!r}")
    try:
        gid = parse_glyph_id(el.attrib["code"])
    except (MalformedCode, FieldOutOfRange) as exc:
        raise BadCode(f"sign {sign_id!r}: {exc}") from exc
    x = _require_int(el.attrib["x"], "x")
    y = _require_int(el.attrib["y"], "y")
    z = _require_int(el.attrib.get("z", "0"), "z")
    if not (0 <= x < SIGN_SPACE and 0 <= y < SIGN_SPACE):
        raise BadCoordinate(f"({x},{y}) outside sign space [0,{SIGN_SPACE})")
    return GlyphPlacement(gid, x, y, z)


def _parse_sign_el(el: ET.Element) -> Sign:
    extra = set(el.attrib) - {"id", "source"}
    if extra:
        raise SchemaViolation(f"sign element has unknown attributes {sorted(extra)}")
    sign_id = el.attrib.get("id")
    if not sign_id:
        raise SchemaViolation("sign element missing id")
    source = el.attrib.get("source", "editor")
    if source not in SIGN_SOURCES:
        raise SchemaViolation(f"sign {sign_id!r}: bad source {source!r}")
    glosses: list[str] = []
    placements: list[GlyphPlacement] = []
    for child in el:
        if child.tag == "gloss":
            if len(child) or placements:
                raise SchemaViolation("gloss elements must precede glyph elements")
            glosses.append(child.text or "")
        elif child.tag == "glyph":
            if len(child):
                raise SchemaViolation("glyph element must be empty")
            placements.append(_parse_glyph_el(child, sign_id))
        else:
            raise SchemaViolation(f"unexpected element {child.tag!r} in sign")
    if not placements:
        raise SchemaViolation(f"sign {sign_id!r} has no glyph elements")
    return Sign(sign_id=sign_id, placements=placements, gloss_labels=glosses, source=source)


def parse_swml(data: bytes | str) -> SignDocument:
    """Parse SWML bytes into a SignDocument.

    Glyph ids must be syntactically valid; ids unknown to a catalog are
    accepted here and flagged downstream (corpus ingest, recognition review).
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        raise MalformedDocument(str(exc)) from exc
    if root.tag != "swml":
        raise SchemaViolation(f"root element is {root.tag!r}, expected 'swml'")
    if root.attrib.get("version") != SWML_VERSION:
        raise SchemaViolation(f"unsupported swml version {root.attrib.get('version')!r}")

    meta = DocMeta()
    columns: list[list[Sign]] = []
    seen_meta = False
    seen_ids: set[str] = set()
    for child in root:
        if child.tag == "doc-meta":
            if seen_meta or columns:
                raise SchemaViolation("doc-meta must appear once, before columns")
            extra = set(child.attrib) - set(_META_ATTRS)
            if extra:
                raise SchemaViolation(f"doc-meta has unknown attributes {sorted(extra)}")
            meta = DocMeta(**{k: child.attrib.get(k) for k in _META_ATTRS})
            seen_meta = True
        elif child.tag == "column":
            if child.attrib:
                raise SchemaViolation("column element takes no attributes")
            signs = []
            for sub in child:
                if sub.tag != "sign":
                    raise SchemaViolation(f"unexpected element {sub.tag!r} in column")
                sign = _parse_sign_el(sub)
                if sign.sign_id in seen_ids:
                    raise SchemaViolation(f"duplicate sign id {sign.sign_id!r}")
                seen_ids.add(sign.sign_id)
                signs.append(sign)
            columns.append(signs)
        else:
            raise SchemaViolation(f"unexpected element {child.tag!r} under swml")
    return SignDocument(meta=meta, columns=columns)


# --- serialize ---


def _escape(value: str, attribute: bool = True) -> str:
    for ch in value:
        if ord(ch) < 0x20 and ch not in "\t\n\r":
            raise InvariantViolation(f"control character {ch!r} not representable in SWML")
    value = (
        value.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )
    # whitespace that parsers would normalize away must go out as character
    # references: CR everywhere, tab/newline inside attribute values
    value = value.replace("\r", "&#13;")
    if attribute:
        value = value.replace("\t", "&#9;").replace("\n", "&#10;")
    return value


def serialize_swml(doc: SignDocument) -> bytes:
    """Canonical byte serialization; deterministic, parse round-trips."""
    doc.validate()
    out: list[str] = ['<?xml version="1.0" encoding="UTF-8"?>']
    out.append(f'<swml version="{SWML_VERSION}">')
    meta_attrs = "".join(
        f' {k}="{_escape(v)}"'
        for k, v in ((k, getattr(doc.meta, k.replace("-", "_"))) for k in _META_ATTRS)
        if v is not None
    )
    out.append(f"  <doc-meta{meta_attrs}/>")
    for column in doc.columns:
        if not column:
            out.append("  <column/>")
            continue
        out.append("  <column>")
        for sign in column:
            out.append(f'    <sign id="{_escape(sign.sign_id)}" source="{sign.source}">')
            for gloss in sign.gloss_labels:
                out.append(f"      <gloss>{_escape(gloss, attribute=False)}</gloss>")
            for p in _canonical_placements(sign.placements):
                out.append(
                    f'      <glyph code="{format_glyph_id(p.glyph)}" '
                    f'x="{p.x}" y="{p.y}" z="{p.z}"/>'
                )
            out.append("    </sign>")
        out.append("  </column>")
    out.append("</swml>")
    return ("\n".join(out) + "\n").encode("utf-8")


# --- geometry ---


@dataclass(frozen=True)
class Box:
    min_x: int
    min_y: int
    max_x: int
    max_y: int

    @property
    def width(self) -> int:
        return self.max_x - self.min_x

    @property
    def height(self) -> int:
        return self.max_y - self.min_y


def compute_bbox(sign: Sign, catalog: Catalog) -> Box:
    """Minimal box covering every placed glyph's image extent (max exclusive)."""
    if not sign.placements:
        raise InvariantViolation(f"sign {sign.sign_id!r} has no placements")
    min_x = min_y = None
    max_x = max_y = None
    for p in sign.placements:
        w, h = catalog.asset_size(p.glyph)
        min_x = p.x if min_x is None else min(min_x, p.x)
        min_y = p.y if min_y is None else min(min_y, p.y)
        max_x = p.x + w if max_x is None else max(max_x, p.x + w)
        max_y = p.y + h if max_y is None else max(max_y, p.y + h)
    return Box(min_x, min_y, max_x, max_y)


def normalize_sign(sign: Sign, catalog: Catalog) -> Sign:
    """Translate so the bbox min corner sits at (0,0); compact z to 0..n-1.

    Idempotent; relative geometry and draw order are preserved.
    """
    box = compute_bbox(sign, catalog)
    moved = [p.translated(-box.min_x, -box.min_y) for p in sign.placements]
    moved = _canonical_placements(moved)
    moved = [replace(p, z=i) for i, p in enumerate(moved)]
    return Sign(
        sign_id=sign.sign_id,
        placements=moved,
        gloss_labels=list(sign.gloss_labels),
        source=sign.source,
    )


def layout_column(
    signs: list[Sign], spacing: int, catalog: Catalog
) -> list[tuple[str, int]]:
    """Vertical stacking offsets: each sign below the previous plus spacing."""
    if spacing < 0:
        raise ValueError("spacing must be >= 0")
    offsets: list[tuple[str, int]] = []
    cursor = 0
    for sign in signs:
        offsets.append((sign.sign_id, cursor))
        cursor += compute_bbox(sign, catalog).height + spacing
    return offsets
