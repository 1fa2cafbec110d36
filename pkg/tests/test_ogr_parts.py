"""Binarization, component extraction, grouping, and feature tests."""

import math
import random
from collections import deque

import numpy as np
import pytest

from swkit.errors import DegenerateImage
from swkit.ogr import (
    ComponentBlob,
    binarize,
    candidate_mask,
    extract_components,
    extract_features,
    group_blobs,
    otsu_threshold,
    skeletonize,
)
from swkit.ogr.components import box_gap
from swkit.ogr.features import euler_number
from swkit.ogr.raster import RasterPage
from swkit.swml import Box


def page_of(arr) -> RasterPage:
    return RasterPage(np.asarray(arr, dtype=np.uint8))


# --- binarize ---


def test_all_white_page_has_no_foreground():
    fg = binarize(page_of(np.full((40, 40), 255)))
    assert fg.sum() == 0


def test_foreground_matches_rendered_ink(catalog):
    from swkit.codes import parse_glyph_id
    from swkit.ogr import render_document
    from swkit.swml import GlyphPlacement, Sign, SignDocument

    doc = SignDocument(columns=[[
        Sign("s1", [GlyphPlacement(parse_glyph_id("01-01-002-01-02-01"), 0, 0)]),
    ]])
    page, truth = render_document(doc, catalog)
    ink = int((page.pixels == 0).sum())
    assert binarize(page).sum() == ink


def test_inverted_polarity_auto_detected():
    img = np.full((30, 30), 255, dtype=np.uint8)
    img[5:12, 5:12] = 10
    normal = binarize(page_of(img))
    flipped = binarize(page_of(255 - img))
    assert np.array_equal(normal, flipped)
    assert normal.sum() == 49


def test_explicit_polarity():
    img = np.full((20, 20), 255, dtype=np.uint8)
    img[0:3, :] = 0
    assert binarize(page_of(img), polarity="dark").sum() == 60
    assert binarize(page_of(img), polarity="light").sum() == 340


def test_uniform_gray_degenerate():
    with pytest.raises(DegenerateImage):
        binarize(page_of(np.full((10, 10), 128)))


def test_uniform_gray_with_override():
    fg = binarize(page_of(np.full((10, 10), 128)), threshold=200, polarity="dark")
    assert fg.all()


def test_fixed_method_requires_threshold():
    with pytest.raises(ValueError):
        binarize(page_of(np.zeros((4, 4))), method="fixed")


def test_otsu_separates_bimodal():
    img = np.full((50, 50), 240, dtype=np.uint8)
    img[10:20, 10:30] = 15
    t = otsu_threshold(img)
    assert 15 <= t < 240
    assert binarize(page_of(img)).sum() == 200


# --- components ---


def flood_fill_count(binary, min_area):
    """Independent 8-connectivity component counter (BFS flood fill)."""
    binary = np.asarray(binary, dtype=bool)
    seen = np.zeros_like(binary)
    sizes = []
    h, w = binary.shape
    for sy in range(h):
        for sx in range(w):
            if not binary[sy, sx] or seen[sy, sx]:
                continue
            size = 0
            queue = deque([(sy, sx)])
            seen[sy, sx] = True
            while queue:
                y, x = queue.popleft()
                size += 1
                for dy in (-1, 0, 1):
                    for dx in (-1, 0, 1):
                        ny, nx = y + dy, x + dx
                        if 0 <= ny < h and 0 <= nx < w and binary[ny, nx] and not seen[ny, nx]:
                            seen[ny, nx] = True
                            queue.append((ny, nx))
            sizes.append(size)
    return sum(1 for s in sizes if s >= min_area)


def test_two_disjoint_squares():
    img = np.zeros((30, 30), dtype=bool)
    img[2:8, 2:8] = True
    img[20:26, 12:20] = True
    blobs = extract_components(img)
    assert len(blobs) == 2
    assert blobs[0].bbox == Box(2, 2, 8, 8)
    assert blobs[1].area == 48


def test_ring_is_one_blob():
    yy, xx = np.ogrid[:40, :40]
    d2 = (yy - 20) ** 2 + (xx - 20) ** 2
    ring = (d2 <= 144) & (d2 > 64)
    assert len(extract_components(ring)) == 1


def test_min_area_discards_noise():
    img = np.zeros((20, 20), dtype=bool)
    img[3, 3] = True              # 1 px speck
    img[10:13, 10:13] = True      # 9 px blob
    blobs = extract_components(img, min_area=4)
    assert len(blobs) == 1 and blobs[0].area == 9


def test_component_count_matches_flood_fill_oracle():
    rng = np.random.default_rng(8)
    for _ in range(30):
        img = rng.random((40, 40)) < 0.25
        assert len(extract_components(img, min_area=4)) == flood_fill_count(img, 4)


# --- grouping ---


def blob_at(x0, y0, x1, y1):
    mask = np.ones((y1 - y0, x1 - x0), dtype=bool)
    return ComponentBlob(Box(x0, y0, x1, y1), mask.size, ((x0 + x1) / 2, (y0 + y1) / 2), mask)


def test_proximity_zero_keeps_separated_blobs_apart():
    blobs = [blob_at(0, 0, 4, 4), blob_at(6, 0, 10, 4)]
    assert len(group_blobs(blobs, 0)) == 2


def test_proximity_zero_merges_touching_blobs():
    blobs = [blob_at(0, 0, 4, 4), blob_at(4, 0, 8, 4)]
    assert len(group_blobs(blobs, 0)) == 1


def test_two_px_gap_merges_at_proximity_five():
    blobs = [blob_at(0, 0, 4, 4), blob_at(6, 0, 10, 4)]  # 2 empty columns
    groups = group_blobs(blobs, 5)
    assert len(groups) == 1 and len(groups[0]) == 2


def single_linkage_oracle(blobs, cutoff):
    """Brute-force transitive closure over the gap <= cutoff graph."""
    parent = list(range(len(blobs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(blobs)):
        for j in range(i + 1, len(blobs)):
            if box_gap(blobs[i].bbox, blobs[j].bbox) <= cutoff:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(len(blobs)):
        groups.setdefault(find(i), []).append(i)
    return sorted(tuple(sorted(g)) for g in groups.values())


def test_grouping_equals_single_linkage_oracle():
    rng = random.Random(77)
    for _ in range(40):
        blobs = []
        for _ in range(rng.randint(1, 14)):
            x0, y0 = rng.randrange(60), rng.randrange(60)
            blobs.append(blob_at(x0, y0, x0 + rng.randint(2, 8), y0 + rng.randint(2, 8)))
        cutoff = rng.randint(0, 6)
        index_of = {id(b): i for i, b in enumerate(blobs)}
        got = group_blobs(blobs, cutoff)
        as_sets = sorted(tuple(sorted(index_of[id(b)] for b in g)) for g in got)
        assert as_sets == single_linkage_oracle(blobs, cutoff)


def test_max_glyph_size_blocks_merge():
    blobs = [blob_at(0, 0, 30, 30), blob_at(32, 0, 62, 30)]
    assert len(group_blobs(blobs, 5, max_glyph_size=40)) == 2
    assert len(group_blobs(blobs, 5, max_glyph_size=None)) == 1


def test_candidate_mask_unions_members():
    blobs = [blob_at(0, 0, 3, 3), blob_at(5, 1, 8, 4)]
    mask, box = candidate_mask(blobs)
    assert box == Box(0, 0, 8, 4)
    assert mask.shape == (4, 8)
    assert int(mask.sum()) == 18


# --- features ---


def disc_mask(r=10):
    yy, xx = np.ogrid[: 2 * r + 1, : 2 * r + 1]
    return (yy - r) ** 2 + (xx - r) ** 2 <= r * r


def annulus_mask(r_out=12, r_in=6):
    yy, xx = np.ogrid[: 2 * r_out + 1, : 2 * r_out + 1]
    d2 = (yy - r_out) ** 2 + (xx - r_out) ** 2
    return (d2 <= r_out * r_out) & (d2 > r_in * r_in)


def test_disc_features():
    f = extract_features(disc_mask())
    assert f.hole_count == 0
    assert f.symmetry_h > 0.95 and f.symmetry_v > 0.95
    assert 0.7 < f.fill_ratio < 0.85
    assert f.aspect_ratio == 1.0


def test_annulus_has_one_hole():
    assert extract_features(annulus_mask()).hole_count == 1


def test_two_rings_two_holes():
    m = np.zeros((30, 64), dtype=bool)
    ring = annulus_mask(12, 6)
    m[1:26, 1:26] |= ring
    m[1:26, 34:59] |= ring
    assert extract_features(m).hole_count == 2


def background_hole_oracle(mask):
    """Holes = enclosed background components (4-connected background)."""
    padded = np.pad(mask, 1)
    bg = ~padded
    seen = np.zeros_like(bg)
    h, w = bg.shape
    regions = 0
    enclosed = 0
    for sy in range(h):
        for sx in range(w):
            if not bg[sy, sx] or seen[sy, sx]:
                continue
            regions += 1
            touches_border = False
            queue = deque([(sy, sx)])
            seen[sy, sx] = True
            while queue:
                y, x = queue.popleft()
                if y in (0, h - 1) or x in (0, w - 1):
                    touches_border = True
                for dy, dx in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    ny, nx = y + dy, x + dx
                    if 0 <= ny < h and 0 <= nx < w and bg[ny, nx] and not seen[ny, nx]:
                        seen[ny, nx] = True
                        queue.append((ny, nx))
            if not touches_border:
                enclosed += 1
    return enclosed


def test_hole_count_matches_background_oracle():
    rng = np.random.default_rng(3)
    for _ in range(25):
        blob = rng.random((24, 24)) < 0.55
        if not blob.any():
            continue
        assert extract_features(blob).hole_count == background_hole_oracle(blob)


def test_rotation_invariance():
    for mask in (disc_mask(8), annulus_mask(10, 5)):
        base = extract_features(mask)
        for k in (1, 2, 3):
            rot = extract_features(np.rot90(mask, k))
            assert rot.hole_count == base.hole_count
            assert math.isclose(rot.compactness, base.compactness, rel_tol=1e-9)
            if k % 2 == 1:
                assert math.isclose(rot.aspect_ratio, 1 / base.aspect_ratio, rel_tol=1e-9)


def test_rotation_invariance_on_catalog_glyphs(catalog):
    for gid in catalog.all_ids()[::41]:
        mask = catalog.asset_mask(gid)
        base = extract_features(mask)
        rot = extract_features(np.rot90(mask))
        assert rot.hole_count == base.hole_count
        assert math.isclose(rot.compactness, base.compactness, rel_tol=1e-9)


def test_skeleton_of_line_has_two_endpoints():
    m = np.zeros((6, 30), dtype=bool)
    m[2:4, 2:28] = True
    f = extract_features(m)
    assert f.skeleton_endpoints == 2
    assert f.skeleton_junctions == 0


def test_skeleton_of_cross_has_junction():
    m = np.zeros((31, 31), dtype=bool)
    m[14:17, 2:29] = True
    m[2:29, 14:17] = True
    f = extract_features(m)
    assert f.skeleton_endpoints == 4
    assert f.skeleton_junctions >= 1


def test_skeletonize_preserves_topology():
    skel = skeletonize(annulus_mask())
    assert skel.sum() > 0
    assert euler_number(skel) == 0  # still one component with one hole


def test_empty_candidate_rejected():
    with pytest.raises(ValueError):
        extract_features(np.zeros((5, 5), dtype=bool))
