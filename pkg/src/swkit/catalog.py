"""ISWA catalog: manifest loading, taxonomy indexes, and faceted search.

A catalog is loaded from a versioned manifest file (see docs/formats.md)
plus one monochrome image asset per glyph. After loading it is immutable
and safe for unrestricted concurrent reads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import numpy as np

from .codes import GlyphId, parse_glyph_id
from .errors import (
    CountMismatch,
    DanglingAsset,
    DuplicateId,
    InvalidEntry,
    MalformedCode,
    FieldOutOfRange,
    UnknownAttribute,
    UnknownGlyph,
    UnknownOption,
    UnknownRegion,
    UnknownScope,
)

MANIFEST_MAGIC = "#iswa-manifest v1"

BODY_REGIONS = ("head", "face", "shoulders", "arm", "hand", "torso")
ASPECT_REGIONS = ("movement", "contact", "dynamics", "punctuation")
REGION_KINDS = BODY_REGIONS + ASPECT_REGIONS

#: FilterState: at most one chosen option per choice box (dict keys are boxes)
FilterState = Mapping[str, str]


@dataclass(frozen=True)
class GlyphDescriptor:
    id: GlyphId
    name: str
    anatomic_tag: str
    filter_attributes: Mapping[str, str]
    asset_key: str
    exception: bool = False


@dataclass(frozen=True)
class AnatomicRegion:
    name: str
    kind: str  # "body" or "aspect"
    linked_scopes: tuple[tuple[int, int | None], ...]


@dataclass(frozen=True)
class ChoiceBoxSpec:
    attribute: str
    options: tuple[str, ...]


@dataclass
class Catalog:
    version: str
    root: Path
    _by_id: dict[GlyphId, GlyphDescriptor] = field(repr=False, default_factory=dict)
    _hierarchy: dict[int, dict[int, list[GlyphId]]] = field(repr=False, default_factory=dict)
    _by_region: dict[str, list[GlyphId]] = field(repr=False, default_factory=dict)
    _asset_cache: dict[GlyphId, np.ndarray] = field(repr=False, default_factory=dict)

    @property
    def glyph_count(self) -> int:
        return len(self._by_id)

    def categories(self) -> list[int]:
        return sorted(self._hierarchy)

    def groups(self, category: int) -> list[int]:
        if category not in self._hierarchy:
            raise UnknownScope(f"category {category} not in catalog")
        return sorted(self._hierarchy[category])

    def all_ids(self) -> list[GlyphId]:
        return sorted(self._by_id)

    def __contains__(self, gid: GlyphId) -> bool:
        return gid in self._by_id

    def get(self, gid: GlyphId) -> GlyphDescriptor:
        try:
            return self._by_id[gid]
        except KeyError:
            raise UnknownGlyph(f"{gid} not in catalog") from None

    def region_names(self) -> list[str]:
        return [r for r in REGION_KINDS if r in self._by_region]

    def region_ids(self, region: str) -> list[GlyphId]:
        if region not in self._by_region:
            raise UnknownRegion(f"region {region!r} not in catalog")
        return list(self._by_region[region])

    def asset_path(self, gid: GlyphId) -> Path:
        return self.root / self.get(gid).asset_key

    def asset_mask(self, gid: GlyphId) -> np.ndarray:
        """Boolean ink mask of the glyph's image (True = ink), cached."""
        cached = self._asset_cache.get(gid)
        if cached is None:
            from PIL import Image

            with Image.open(self.asset_path(gid)) as img:
                cached = np.asarray(img.convert("L")) < 128
            self._asset_cache[gid] = cached
        return cached

    def asset_size(self, gid: GlyphId) -> tuple[int, int]:
        """(width, height) of the glyph image."""
        mask = self.asset_mask(gid)
        return mask.shape[1], mask.shape[0]


def _parse_attrs(text: str, lineno: int) -> dict[str, str]:
    if text in ("", "-"):
        return {}
    attrs: dict[str, str] = {}
    for part in text.split(","):
        if "=" not in part:
            raise InvalidEntry(f"line {lineno}: bad attribute {part!r}")
        key, value = part.split("=", 1)
        key, value = key.strip(), value.strip()
        if not key or not value or key in attrs:
            raise InvalidEntry(f"line {lineno}: bad attribute {part!r}")
        attrs[key] = value
    return attrs


def load_catalog(source: str | Path) -> Catalog:
    """Load, validate, and index a catalog manifest.

    Raises DuplicateId, DanglingAsset, CountMismatch, or InvalidEntry on the
    corresponding manifest defects.
    """
    path = Path(source)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InvalidEntry(f"cannot read manifest: {exc}") from exc
    if not lines or lines[0].strip() != MANIFEST_MAGIC:
        raise InvalidEntry("missing manifest header line")

    version = ""
    declared_count: int | None = None
    catalog = Catalog(version="", root=path.parent)
    seen: dict[GlyphId, int] = {}

    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.startswith("#catalog-version"):
                version = line.split(None, 1)[1].strip() if " " in line else ""
            elif line.startswith("#count"):
                try:
                    declared_count = int(line.split()[1])
                except (IndexError, ValueError) as exc:
                    raise InvalidEntry(f"line {lineno}: bad #count directive") from exc
            continue
        fields = line.split("\t")
        if len(fields) != 6:
            raise InvalidEntry(f"line {lineno}: expected 6 tab-separated fields")
        code, name, region, attr_text, asset, flag_text = fields
        try:
            gid = parse_glyph_id(code.strip())
        except (MalformedCode, FieldOutOfRange) as exc:
            raise InvalidEntry(f"line {lineno}: {exc}") from exc
        if gid in seen:
            raise DuplicateId(f"line {lineno}: {code} already defined on line {seen[gid]}")
        seen[gid] = lineno
        region = region.strip()
        if region not in REGION_KINDS:
            raise InvalidEntry(f"line {lineno}: unknown region {region!r}")
        flags = set() if flag_text.strip() in ("", "-") else set(flag_text.strip().split(","))
        unknown_flags = flags - {"exception"}
        if unknown_flags:
            raise InvalidEntry(f"line {lineno}: unknown flags {sorted(unknown_flags)}")
        asset = asset.strip()
        if not asset or not (path.parent / asset).is_file():
            raise DanglingAsset(f"line {lineno}: asset {asset!r} not found")
        desc = GlyphDescriptor(
            id=gid,
            name=name.strip(),
            anatomic_tag=region,
            filter_attributes=_parse_attrs(attr_text.strip(), lineno),
            asset_key=asset,
            exception="exception" in flags,
        )
        catalog._by_id[gid] = desc

    if declared_count is None:
        raise InvalidEntry("manifest missing #count directive")
    if declared_count != len(catalog._by_id):
        raise CountMismatch(
            f"manifest declares {declared_count} glyphs, found {len(catalog._by_id)}"
        )

    # region consistency: within one (category, group) scope every
    # non-exception entry carries the same region tag
    scope_region: dict[tuple[int, int], str] = {}
    for gid, desc in catalog._by_id.items():
        if desc.exception:
            continue
        key = (gid.category, gid.group)
        prior = scope_region.setdefault(key, desc.anatomic_tag)
        if prior != desc.anatomic_tag:
            raise InvalidEntry(
                f"scope {key} mixes regions {prior!r} and {desc.anatomic_tag!r} "
                "without an exception flag"
            )

    for gid in sorted(catalog._by_id):
        desc = catalog._by_id[gid]
        catalog._hierarchy.setdefault(gid.category, {}).setdefault(gid.group, []).append(gid)
        catalog._by_region.setdefault(desc.anatomic_tag, []).append(gid)
    catalog.version = version
    return catalog


def glyphs_in(catalog: Catalog, scope: int | tuple[int, int]) -> list[GlyphDescriptor]:
    """All descriptors under a category or (category, group) scope, by code."""
    if isinstance(scope, tuple):
        category, group = scope
        groups = catalog._hierarchy.get(category)
        if groups is None or group not in groups:
            raise UnknownScope(f"scope {scope} not in catalog")
        ids: Iterable[GlyphId] = groups[group]
    else:
        groups = catalog._hierarchy.get(scope)
        if groups is None:
            raise UnknownScope(f"category {scope} not in catalog")
        ids = (gid for grp in sorted(groups) for gid in groups[grp])
    return [catalog.get(gid) for gid in sorted(ids)]


def regions_for_puppet(catalog: Catalog) -> list[AnatomicRegion]:
    """Body regions and non-body aspect buttons, linking every category."""
    regions: list[AnatomicRegion] = []
    for name in REGION_KINDS:
        if name not in catalog._by_region:
            continue
        scopes = sorted({(gid.category, gid.group) for gid in catalog._by_region[name]})
        collapsed: list[tuple[int, int | None]] = []
        for category in sorted({c for c, _ in scopes}):
            groups_here = [g for c, g in scopes if c == category]
            if set(groups_here) == set(catalog._hierarchy[category]):
                collapsed.append((category, None))
            else:
                collapsed.extend((category, g) for g in groups_here)
        regions.append(
            AnatomicRegion(
                name=name,
                kind="body" if name in BODY_REGIONS else "aspect",
                linked_scopes=tuple(collapsed),
            )
        )
    return regions


def _option_sort_key(value: str) -> tuple[int, object]:
    return (0, int(value)) if value.isdigit() else (1, value)


def choice_boxes_for(catalog: Catalog, region: str | AnatomicRegion) -> list[ChoiceBoxSpec]:
    """One choice box per attribute occurring in the region's glyphs."""
    name = region.name if isinstance(region, AnatomicRegion) else region
    options: dict[str, set[str]] = {}
    for gid in catalog.region_ids(name):
        for attr, value in catalog.get(gid).filter_attributes.items():
            options.setdefault(attr, set()).add(value)
    return [
        ChoiceBoxSpec(attribute=attr, options=tuple(sorted(vals, key=_option_sort_key)))
        for attr, vals in sorted(options.items())
    ]


def filter_glyphs(
    catalog: Catalog, region: str | AnatomicRegion, state: FilterState
) -> list[GlyphDescriptor]:
    """Region glyphs matching every chosen option, ordered by code.

    Adding a choice can only shrink the result (conjunctive filtering).
    """
    name = region.name if isinstance(region, AnatomicRegion) else region
    boxes = {box.attribute: set(box.options) for box in choice_boxes_for(catalog, name)}
    for attr, value in state.items():
        if attr not in boxes:
            raise UnknownAttribute(f"{attr!r} is not a choice box of region {name!r}")
        if value not in boxes[attr]:
            raise UnknownOption(f"{value!r} is not an option of box {attr!r}")
    out = []
    for gid in catalog.region_ids(name):
        desc = catalog.get(gid)
        if all(desc.filter_attributes.get(a) == v for a, v in state.items()):
            out.append(desc)
    return sorted(out, key=lambda d: d.id)
