"""Procedural glyph artwork for the shipped sample catalog.

Every sample-catalog asset is synthesized here from its glyph id alone, so
the catalog data can be regenerated bit-identically. Shapes are designed to
be pairwise distinct after cropping (and after scale normalization), and to
give each category a recognizable geometric/topological signature: hands are
blocky palms with finger ticks, movement glyphs are arrows, heads are rings,
punctuation marks are small heavy symbols, and so on.

Masks are boolean arrays, True = ink, cropped tight to the ink extent.
"""

from __future__ import annotations

import numpy as np

from .codes import GlyphId

# --- drawing primitives ---


def _canvas(h: int, w: int) -> np.ndarray:
    return np.zeros((h, w), dtype=bool)


def _rect(m: np.ndarray, y0: int, x0: int, y1: int, x1: int) -> None:
    m[max(y0, 0):y1, max(x0, 0):x1] = True


def _rect_outline(m: np.ndarray, y0: int, x0: int, y1: int, x1: int, t: int) -> None:
    _rect(m, y0, x0, y1, x1)
    inner = _canvas(*m.shape)
    _rect(inner, y0 + t, x0 + t, y1 - t, x1 - t)
    m[inner] = False


def _disc(m: np.ndarray, cy: float, cx: float, r: float) -> None:
    yy, xx = np.ogrid[: m.shape[0], : m.shape[1]]
    m[(yy - cy) ** 2 + (xx - cx) ** 2 <= r * r] = True


def _ring(m: np.ndarray, cy: float, cx: float, r_out: float, r_in: float) -> None:
    yy, xx = np.ogrid[: m.shape[0], : m.shape[1]]
    d2 = (yy - cy) ** 2 + (xx - cx) ** 2
    m[(d2 <= r_out * r_out) & (d2 > r_in * r_in)] = True


def _stroke(m: np.ndarray, y0: float, x0: float, y1: float, x1: float, t: int = 2) -> None:
    """Stamp a straight stroke by sweeping a t x t brush along the segment."""
    steps = int(max(abs(y1 - y0), abs(x1 - x0)) * 2) + 1
    half = t / 2.0
    for i in range(steps + 1):
        f = i / steps
        y = y0 + (y1 - y0) * f
        x = x0 + (x1 - x0) * f
        _rect(m, int(round(y - half)), int(round(x - half)),
              int(round(y + half)), int(round(x + half)))


def crop_mask(m: np.ndarray) -> np.ndarray:
    ys, xs = np.nonzero(m)
    if ys.size == 0:
        raise ValueError("empty mask")
    return m[ys.min():ys.max() + 1, xs.min():xs.max() + 1].copy()


# --- category 1: hands ---

_PALM = {
    1: ("fist", (14, 12, 30, 28)),     # square
    2: ("flat", (8, 14, 30, 26)),      # tall rectangle
    3: ("curved", None),               # C shape, drawn specially
    4: ("spread", (20, 11, 30, 29)),   # wide shallow palm
    5: ("narrow", (18, 14, 30, 26)),   # small palm
}


def _hand(group: int, base: int, fill: int) -> np.ndarray:
    m = _canvas(40, 40)
    family, box = _PALM[group]
    if family == "curved":
        # C opening to the right
        if fill == 1:
            _ring(m, 22, 20, 9, 6)
        else:
            _disc(m, 22, 20, 9)
        m[16:28, 24:] = False
        top = 13
        left, right = 11, 29
        bottom = 31
    else:
        y0, x0, y1, x1 = box
        if fill == 1:
            _rect_outline(m, y0, x0, y1, x1, 2)
        else:
            _rect(m, y0, x0, y1, x1)
        top, left, bottom, right = y0, x0, y1, x1
    # finger ticks along the top edge, count = base - 1
    n = base - 1
    span = right - left
    for i in range(n):
        cx = left + round((i + 1) * span / (n + 1))
        _rect(m, top - 7, cx - 1, top + 1, cx + 2)
    # wrist stub keeps every hand rotation-asymmetric
    mid = (left + right) // 2
    _rect(m, bottom, mid - 2, bottom + 6, mid + 2)
    return m


# --- category 2: movement arrows ---


def _arrow_head(m: np.ndarray, y: int, x: int) -> None:
    _stroke(m, y, x, y + 6, x - 6, 2)
    _stroke(m, y, x, y + 6, x + 6, 2)


def _movement(group: int, base: int) -> np.ndarray:
    m = _canvas(36, 36)
    if group == 1:  # straight shaft, tip up
        length = (12, 17, 22, 27)[base - 1]
        _rect(m, 6, 16, 6 + length, 19)
        _arrow_head(m, 6, 17)
    elif group == 2:  # quarter-arc shaft
        r = (10, 14, 18, 22)[base - 1]
        yy, xx = np.ogrid[:36, :36]
        d2 = (yy - 26) ** 2 + (xx - 26) ** 2
        band = (d2 <= r * r) & (d2 > (r - 3) ** 2)
        m[band & (yy < 26) & (xx < 26)] = True
        _arrow_head(m, 26 - r, 25)
    else:  # zigzag
        a = (8, 11, 14, 17)[base - 1]
        _stroke(m, 8 + a, 6, 8, 6 + a // 2 + 4, 2)
        _stroke(m, 8, 6 + a // 2 + 4, 8 + a, 6 + a + 8, 2)
        _arrow_head(m, 8 + a - 4, 6 + a + 8)
    return m


# --- category 3: contact and dynamics marks ---


def _contact(group: int, base: int, variation: int) -> np.ndarray:
    m = _canvas(26, 26)
    if group == 1:  # touch
        if base == 1:
            _disc(m, 10, 12, 3.4)
        else:
            _disc(m, 10, 7, 3.2)
            _disc(m, 10, 17, 3.2)
    elif group == 2:  # grasp
        _ring(m, 10, 12, 8, 6)
        if base == 1:
            _disc(m, 10, 12, 2.4)
        else:
            _disc(m, 10, 9, 1.9)
            _disc(m, 10, 15, 1.9)
    elif group == 3:  # strike
        length = 10 if base == 1 else 15
        c = 12
        h = length // 2
        _stroke(m, 10 - h, c - h, 10 + h, c + h, 2)
        _stroke(m, 10 - h, c + h, 10 + h, c - h, 2)
    else:  # tempo chevrons
        _stroke(m, 4, 8, 10, 14, 2)
        _stroke(m, 16, 8, 10, 14, 2)
        if base == 2:
            _stroke(m, 4, 14, 10, 20, 2)
            _stroke(m, 16, 14, 10, 20, 2)
    if variation == 2:  # repetition bar under the mark
        ys, xs = np.nonzero(m)
        _rect(m, ys.max() + 3, 6, ys.max() + 5, 20)
    return m


# --- category 4: head and face ---


def _head_face(group: int, base: int, variation: int) -> np.ndarray:
    m = _canvas(30, 30)
    if group == 1:  # head rim
        _ring(m, 16, 14, 11, 8)
        if base == 2:  # tilted: gap at top-right
            m[:12, 20:] = False
        elif base == 3:  # marked: tick at top
            _rect(m, 2, 13, 6, 16)
        if variation == 2:  # crown ticks
            for cx in (7, 14, 21):
                _rect(m, 0, cx - 1, 4, cx + 1)
    elif group == 2:  # eyes
        for cx in (8, 21):
            if base == 1:
                _ring(m, 14, cx, 3.5, 1.5)
            elif base == 2:  # closed lids with a lash tick
                _rect(m, 13, cx - 4, 16, cx + 4)
                _rect(m, 16, cx - 1, 19, cx + 1)
            else:
                _disc(m, 14, cx, 3.4)
            if variation == 2:  # brows above
                _rect(m, 7, cx - 3, 9, cx + 3)
    elif group == 3:  # mouth
        t = 2 if variation == 1 else 3
        if base == 1:
            _ring(m, 14, 14, 5.5, 5.5 - t)
        elif base == 2:
            _rect(m, 13, 7, 13 + t, 21)
            if variation == 1:  # upturned corners
                _rect(m, 10, 7, 13, 9)
                _rect(m, 10, 19, 13, 21)
            else:  # downturned corners
                _rect(m, 13 + t, 7, 13 + t + 3, 9)
                _rect(m, 13 + t, 19, 13 + t + 3, 21)
        else:
            _rect_outline(m, 10, 6, 19, 23, t)
    else:  # brows alone
        t = 2 if variation == 1 else 3
        if base == 1:  # raised
            _stroke(m, 16, 5, 10, 11, t)
            _stroke(m, 10, 17, 16, 23, t)
        elif base == 2:  # flat; strong form is longer, not just thicker
            x0 = 4 if variation == 1 else 3
            w = 8 if variation == 1 else 10
            _rect(m, 12, x0, 12 + t, x0 + w)
            _rect(m, 12, 28 - x0 - w, 12 + t, 28 - x0)
        else:  # angled
            _stroke(m, 10, 5, 16, 11, t)
            _stroke(m, 16, 17, 10, 23, t)
    return m


# --- category 5: shoulders and torso ---


def _torso(group: int, base: int, variation: int) -> np.ndarray:
    m = _canvas(34, 34)
    if group == 1:  # shoulder bar with end stubs
        x0, x1 = (4, 30) if variation == 1 else (7, 27)
        _rect(m, 14, x0, 17, x1)
        stub = (4, 7, 10)[base - 1]
        _rect(m, 17, x0, 17 + stub, x0 + 3)
        _rect(m, 17, x1 - 3, 17 + stub, x1)
    else:  # twin uprights with a crossbar
        xa, xb = (8, 21) if variation == 1 else (10, 19)
        _rect(m, 6, xa, 28, xa + 3)
        _rect(m, 6, xb, 28, xb + 3)
        cy = (6, 15, 25)[base - 1]
        _rect(m, cy, xa, cy + 3, xb + 3)
    return m


# --- category 6: arm strokes ---


def _arm(group: int, base: int) -> np.ndarray:
    m = _canvas(38, 38)
    if group == 1:  # straight limb, hand-end disc
        length = (14, 20, 26)[base - 1]
        _rect(m, 4, 16, 4 + length, 20)
        _disc(m, 4 + length + 2, 18, 3.2)
    else:  # bent limb
        v = (10, 14, 18)[base - 1]
        hz = (8, 11, 14)[base - 1]
        _rect(m, 5, 10, 5 + v, 14)
        _rect(m, 5 + v - 4, 10, 5 + v, 14 + hz)
        _disc(m, 5 + v - 2, 14 + hz + 2, 3.2)
    return m


# --- category 7: punctuation ---


def _punct(base: int, variation: int) -> np.ndarray:
    m = _canvas(24, 24)
    heavy = variation == 2
    if base == 1:  # full stop
        if heavy:
            yy, xx = np.ogrid[:24, :24]
            m[np.abs(yy - 12) + np.abs(xx - 12) <= 6] = True
        else:
            _rect_outline(m, 8, 8, 16, 16, 2)
    elif base == 2:  # comma
        s = 7 if heavy else 5
        _rect(m, 4, 10, 4 + s, 10 + s)
        _stroke(m, 4 + s, 10 + s // 2, 4 + s + 5, 10 + s // 2 - 4, 3 if heavy else 2)
    elif base == 3:  # pause bars
        t = 3 if heavy else 2
        _rect(m, 5, 7, 17, 7 + t)
        _rect(m, 5, 14, 17, 14 + t)
    else:  # query hook
        t = 3.0 if heavy else 2.0
        _ring(m, 8, 12, 5.5, 5.5 - t)
        m[10:14, 6:10] = False  # open the hook at lower-left
        _rect(m, 12, 11, 17, 13)
        _rect(m, 19, 10, 22, 14)
    return m


def glyph_mask(gid: GlyphId) -> np.ndarray:
    """Synthesize the cropped ink mask for a sample-scope glyph id."""
    c = gid.category
    if c == 1:
        m = _hand(gid.group, gid.base, gid.fill)
    elif c == 2:
        m = _movement(gid.group, gid.base)
    elif c == 3:
        m = _contact(gid.group, gid.base, gid.variation)
    elif c == 4:
        m = _head_face(gid.group, gid.base, gid.variation)
    elif c == 5:
        m = _torso(gid.group, gid.base, gid.variation)
    elif c == 6:
        m = _arm(gid.group, gid.base)
    elif c == 7:
        m = _punct(gid.base, gid.variation)
    else:
        raise ValueError(f"category {c} has no sample artwork")
    if gid.rotation > 1:
        m = np.rot90(m, k=gid.rotation - 1)
    return crop_mask(m)


def scale_normalize(mask: np.ndarray, size: int = 32) -> np.ndarray:
    """Nearest-neighbor resample of a cropped mask onto a size x size grid."""
    h, w = mask.shape
    ys = np.minimum((np.arange(size) * h) // size, h - 1)
    xs = np.minimum((np.arange(size) * w) // size, w - 1)
    return mask[np.ix_(ys, xs)]
