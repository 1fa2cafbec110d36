"""Sample-catalog definition: ~300 synthetic glyphs spanning all 7 categories.

The shipped catalog under ``swkit/data/sample_catalog`` is produced by
``write_sample_catalog`` (see scripts/gen_sample_catalog.py). The full ISWA
is a drop-in manifest supplied by the deployer in the same format.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .codes import GlyphId
from .glyphart import glyph_mask, scale_normalize

DIRECTION = {1: "up", 2: "left", 3: "down", 4: "right"}
ORIENTATION = {1: "front", 2: "side"}

_HAND_FAMILY = {1: "fist", 2: "flat", 3: "curved", 4: "spread", 5: "narrow"}
_PATH_SHAPE = {1: "straight", 2: "curved", 3: "zigzag"}
_TRAVEL = {1: "short", 2: "medium", 3: "long", 4: "extended"}
_CONTACT_TYPE = {1: "touch", 2: "grasp", 3: "strike"}
_EYE_SHAPE = {1: "open", 2: "closed", 3: "wide"}
_BROW_SHAPE = {1: "raised", 2: "flat", 3: "angled"}
_LEVEL = {1: "high", 2: "mid", 3: "low"}
_LENGTH = {1: "short", 2: "medium", 3: "long"}
_MARK = {1: "period", 2: "comma", 3: "pause", 4: "query"}


@dataclass(frozen=True)
class SampleEntry:
    gid: GlyphId
    name: str
    region: str
    attrs: dict[str, str]
    exception: bool = False


def _hand_entries() -> list[SampleEntry]:
    out = []
    for group, family in _HAND_FAMILY.items():
        for base in range(1, 5):
            for fill in (1, 2):
                for rot in range(1, 5):
                    gid = GlyphId(1, group, base, 1, fill, rot)
                    fingers = base - 1
                    palm = "toward" if fill == 1 else "away"
                    attrs = {
                        "handshape-family": family,
                        "finger-count": str(fingers),
                        "palm-facing": palm,
                        "direction": DIRECTION[rot],
                    }
                    name = f"{family} hand, {fingers} fingers, palm {palm}, {DIRECTION[rot]}"
                    out.append(SampleEntry(gid, name, "hand", attrs))
    # anatomic exceptions: narrow-hand pointers tagged to the head region
    for fill in (1, 2):
        gid = GlyphId(1, 5, 5, 1, fill, 1)
        palm = "toward" if fill == 1 else "away"
        attrs = {
            "handshape-family": "narrow",
            "finger-count": "4",
            "palm-facing": palm,
            "direction": "up",
        }
        out.append(
            SampleEntry(gid, f"narrow hand at head, palm {palm}", "head", attrs, exception=True)
        )
    return out


def _movement_entries() -> list[SampleEntry]:
    out = []
    for group, shape in _PATH_SHAPE.items():
        for base, travel in _TRAVEL.items():
            for rot in range(1, 5):
                gid = GlyphId(2, group, base, 1, 1, rot)
                attrs = {
                    "path-shape": shape,
                    "travel": travel,
                    "direction": DIRECTION[rot],
                }
                name = f"{shape} arrow, {travel}, {DIRECTION[rot]}"
                out.append(SampleEntry(gid, name, "movement", attrs))
    return out


def _contact_entries() -> list[SampleEntry]:
    out = []
    for group in (1, 2, 3):
        for base in (1, 2):
            for var in (1, 2):
                gid = GlyphId(3, group, base, var, 1, 1)
                kind = _CONTACT_TYPE[group]
                intensity = "single" if base == 1 else "double"
                rep = "once" if var == 1 else "twice"
                attrs = {"contact-type": kind, "intensity": intensity, "repetition": rep}
                out.append(
                    SampleEntry(gid, f"{kind} contact, {intensity}, {rep}", "contact", attrs)
                )
    for base in (1, 2):
        for var in (1, 2):
            gid = GlyphId(3, 4, base, var, 1, 1)
            tempo = "slow" if base == 1 else "fast"
            rep = "once" if var == 1 else "twice"
            attrs = {"tempo": tempo, "repetition": rep}
            out.append(SampleEntry(gid, f"tempo mark, {tempo}, {rep}", "dynamics", attrs))
    return out


def _head_face_entries() -> list[SampleEntry]:
    out = []
    rim_style = {1: "plain", 2: "tilted", 3: "marked"}
    for base in (1, 2, 3):
        for var in (1, 2):
            gid = GlyphId(4, 1, base, var, 1, 1)
            detail = "none" if var == 1 else "crown"
            attrs = {"rim-style": rim_style[base], "detail": detail}
            out.append(
                SampleEntry(gid, f"head rim, {rim_style[base]}, {detail}", "head", attrs)
            )
    for group, feature in ((2, "eyes"), (3, "mouth"), (4, "brows")):
        shapes = _BROW_SHAPE if feature == "brows" else _EYE_SHAPE
        for base in (1, 2, 3):
            for var in (1, 2):
                gid = GlyphId(4, group, base, var, 1, 1)
                intensity = "plain" if var == 1 else "strong"
                attrs = {"feature": feature, "shape": shapes[base], "intensity": intensity}
                out.append(
                    SampleEntry(gid, f"{feature}, {shapes[base]}, {intensity}", "face", attrs)
                )
    return out


def _torso_entries() -> list[SampleEntry]:
    out = []
    for group, region in ((1, "shoulders"), (2, "torso")):
        for base in (1, 2, 3):
            for var in (1, 2):
                for rot in (1, 2):
                    gid = GlyphId(5, group, base, var, 1, rot)
                    width = "wide" if var == 1 else "narrow"
                    attrs = {
                        "level": _LEVEL[base],
                        "width": width,
                        "orientation": ORIENTATION[rot],
                    }
                    name = f"{region} line, {_LEVEL[base]}, {width}, {ORIENTATION[rot]}"
                    out.append(SampleEntry(gid, name, region, attrs))
    return out


def _arm_entries() -> list[SampleEntry]:
    out = []
    for group, bend in ((1, "straight"), (2, "bent")):
        for base in (1, 2, 3):
            for rot in range(1, 5):
                gid = GlyphId(6, group, base, 1, 1, rot)
                attrs = {
                    "bend": bend,
                    "length": _LENGTH[base],
                    "direction": DIRECTION[rot],
                }
                name = f"{bend} arm, {_LENGTH[base]}, {DIRECTION[rot]}"
                out.append(SampleEntry(gid, name, "arm", attrs))
    return out


def _punct_entries() -> list[SampleEntry]:
    out = []
    for base, mark in _MARK.items():
        for var in (1, 2):
            gid = GlyphId(7, 1, base, var, 1, 1)
            weight = "light" if var == 1 else "heavy"
            attrs = {"mark": mark, "weight": weight, "position": "end"}
            out.append(SampleEntry(gid, f"{mark} mark, {weight}", "punctuation", attrs))
    return out


def sample_entries() -> list[SampleEntry]:
    entries = (
        _hand_entries()
        + _movement_entries()
        + _contact_entries()
        + _head_face_entries()
        + _torso_entries()
        + _arm_entries()
        + _punct_entries()
    )
    return sorted(entries, key=lambda e: e.gid)


def _check_distinct(entries: list[SampleEntry]) -> None:
    seen: dict[bytes, GlyphId] = {}
    seen_norm: dict[bytes, GlyphId] = {}
    for entry in entries:
        mask = glyph_mask(entry.gid)
        raw = mask.shape[0].to_bytes(2, "big") + mask.shape[1].to_bytes(2, "big") + np.packbits(mask).tobytes()
        norm = np.packbits(scale_normalize(mask)).tobytes()
        if raw in seen:
            raise AssertionError(f"identical artwork: {entry.gid} vs {seen[raw]}")
        if norm in seen_norm:
            raise AssertionError(
                f"scale-normalized collision: {entry.gid} vs {seen_norm[norm]}"
            )
        seen[raw] = entry.gid
        seen_norm[norm] = entry.gid


def write_sample_catalog(dest: str | Path, version: str = "sample-1.0.0") -> Path:
    """Write manifest + PNG assets under dest; returns the manifest path."""
    from PIL import Image

    dest = Path(dest)
    (dest / "assets").mkdir(parents=True, exist_ok=True)
    entries = sample_entries()
    _check_distinct(entries)

    lines = ["#iswa-manifest v1", f"#catalog-version {version}", f"#count {len(entries)}"]
    for entry in entries:
        mask = glyph_mask(entry.gid)
        asset = f"assets/{entry.gid.code()}.png"
        img = Image.fromarray(np.where(mask, 0, 255).astype(np.uint8), mode="L").convert("1")
        img.save(dest / asset)
        attr_text = ",".join(f"{k}={v}" for k, v in sorted(entry.attrs.items()))
        flags = "exception" if entry.exception else "-"
        lines.append(
            "\t".join((entry.gid.code(), entry.name, entry.region, attr_text, asset, flags))
        )
    manifest = dest / "manifest.tsv"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return manifest


def shipped_manifest_path() -> Path:
    """Path of the catalog data installed with the package."""
    return Path(__file__).parent / "data" / "sample_catalog" / "manifest.tsv"
