"""ISWA glyph codes.

A glyph is identified by a 13-digit code written as six dash-separated,
zero-padded decimal fields::

    CC-GG-BBB-VV-FF-RR
    category(2) group(2) base(3) variation(2) fill(2) rotation(2)

Category runs 1..7; every other field is strictly positive within its
digit budget. ``parse_glyph_id`` and ``format_glyph_id`` round-trip
losslessly over all valid ids.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FieldOutOfRange, MalformedCode

_CODE_RE = re.compile(r"^(\d{2})-(\d{2})-(\d{3})-(\d{2})-(\d{2})-(\d{2})$")

N_CATEGORIES = 7


@dataclass(frozen=True, order=True)
class GlyphId:
    category: int
    group: int
    base: int
    variation: int
    fill: int
    rotation: int

    def code(self) -> str:
        return format_glyph_id(self)

    def base_key(self) -> "GlyphId":
        """Truncate variation/fill/rotation to their canonical representative."""
        return GlyphId(self.category, self.group, self.base, 1, 1, 1)

    def __str__(self) -> str:
        return self.code()


def _check_range(name: str, value: int, upper: int) -> None:
    if not 1 <= value <= upper:
        raise FieldOutOfRange(f"{name} {value} outside 1..{upper}")


def validate_glyph_id(gid: GlyphId) -> GlyphId:
    _check_range("category", gid.category, N_CATEGORIES)
    _check_range("group", gid.group, 99)
    _check_range("base", gid.base, 999)
    _check_range("variation", gid.variation, 99)
    _check_range("fill", gid.fill, 99)
    _check_range("rotation", gid.rotation, 99)
    return gid


def parse_glyph_id(text: str) -> GlyphId:
    """Parse canonical dashed form, e.g. ``"01-05-012-03-01-02"``.

    Raises MalformedCode for anything that is not exactly 13 digits in six
    dashed fields, FieldOutOfRange when a field violates its bounds.
    """
    if not isinstance(text, str):
        raise MalformedCode(f"expected string, got {type(text).__name__}")
    m = _CODE_RE.match(text)
    if m is None:
        raise MalformedCode(f"not a canonical glyph code: {text!r}")
    cat, grp, base, var, fill, rot = (int(g) for g in m.groups())
    return validate_glyph_id(GlyphId(cat, grp, base, var, fill, rot))


def format_glyph_id(gid: GlyphId) -> str:
    """Canonical zero-padded dashed form; inverse of parse_glyph_id."""
    validate_glyph_id(gid)
    return (
        f"{gid.category:02d}-{gid.group:02d}-{gid.base:03d}"
        f"-{gid.variation:02d}-{gid.fill:02d}-{gid.rotation:02d}"
    )
