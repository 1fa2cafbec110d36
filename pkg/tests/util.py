"""Shared helpers for tests: random documents, tiny catalogs, oracles."""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from swkit.catalog import Catalog, load_catalog
from swkit.codes import GlyphId
from swkit.swml import DocMeta, GlyphPlacement, Sign, SignDocument

SAFE_TEXT = [
    "", "HELLO", "two words", "caffè", "sign & gloss", "a<b", 'quo"te',
    "Grüße", "tab\tseparated", "line\nbreak", "cr\rhere",
]


def random_glyph_id(rng: random.Random) -> GlyphId:
    return GlyphId(
        rng.randint(1, 7), rng.randint(1, 99), rng.randint(1, 999),
        rng.randint(1, 99), rng.randint(1, 99), rng.randint(1, 99),
    )


def random_sign(rng: random.Random, sign_id: str) -> Sign:
    n = rng.randint(1, 6)
    placements = []
    used = set()
    while len(placements) < n:
        p = GlyphPlacement(
            glyph=random_glyph_id(rng),
            x=rng.randrange(4096),
            y=rng.randrange(4096),
            z=rng.randint(0, 5),
        )
        if (p.glyph, p.x, p.y) in used:
            continue
        used.add((p.glyph, p.x, p.y))
        placements.append(p)
    glosses = [rng.choice(SAFE_TEXT) for _ in range(rng.randint(0, 2))]
    return Sign(
        sign_id=sign_id,
        placements=placements,
        gloss_labels=glosses,
        source=rng.choice(("editor", "ogr", "import")),
    )


def random_document(rng: random.Random) -> SignDocument:
    meta = DocMeta(
        title=rng.choice(SAFE_TEXT + [None]),
        lang=rng.choice(["lis", "asl", None]),
        author=rng.choice(SAFE_TEXT + [None]),
        created=rng.choice(["2024-01-01T00:00:00Z", None]),
        modified=None,
    )
    columns = []
    counter = 0
    for _ in range(rng.randint(0, 3)):
        signs = []
        for _ in range(rng.randint(0, 4)):
            counter += 1
            signs.append(random_sign(rng, f"s{counter}"))
        columns.append(signs)
    return SignDocument(meta=meta, columns=columns)


def make_sign(codes: list[str], sign_id: str = "s", spacing: int = 60) -> Sign:
    """Sign whose placements hold the given codes on a simple diagonal."""
    from swkit.codes import parse_glyph_id

    return Sign(
        sign_id=sign_id,
        placements=[
            GlyphPlacement(parse_glyph_id(c), i * spacing, (i % 3) * spacing)
            for i, c in enumerate(codes)
        ],
    )


def random_corpus_signs(
    rng: random.Random, pool: list[GlyphId], n_signs: int, max_sign_size: int = 6
) -> list[list[str]]:
    """Random glyph-code sets for corpus building (duplicates across signs allowed)."""
    out = []
    for _ in range(n_signs):
        size = rng.randint(1, max_sign_size)
        codes = [g.code() for g in rng.sample(pool, k=min(size, len(pool)))]
        out.append(codes)
    return out


def predict_oracle(
    transactions: list[tuple[frozenset[GlyphId], int]],
    placed: set[GlyphId],
    k: int,
    granularity: str,
) -> list[tuple[GlyphId, Fraction, str]]:
    """Exhaustive-enumeration reference for suggest(); independent of the model.

    Works directly over raw (glyph-key-set, weight) transactions.
    """

    def trunc(g: GlyphId) -> GlyphId:
        return g.base_key() if granularity == "base" else g

    txs = [(frozenset(trunc(g) for g in t), w) for t, w in transactions]
    total = sum(w for _, w in txs)
    universe = sorted({g for t, _ in txs for g in t})
    keys = {trunc(g) for g in placed}
    candidates = [g for g in universe if g not in keys]

    def support(s: set[GlyphId]) -> int:
        return sum(w for t, w in txs if s <= t)

    contains = {g: support({g}) for g in universe}

    def rank(scores: dict[GlyphId, Fraction], tier: str):
        order = sorted(scores, key=lambda g: (-scores[g], -contains.get(g, 0), g))
        return [(g, scores[g], tier) for g in order[:k]]

    if keys:
        base = support(keys)
        if base > 0:
            scores = {}
            for g in candidates:
                s = support(keys | {g})
                if s > 0:
                    scores[g] = Fraction(s, base)
            if scores:
                return rank(scores, "exact")
        scores = {}
        for g in candidates:
            pair = {s: support({s, g}) for s in keys}
            if any(v > 0 for v in pair.values()):
                acc = Fraction(0)
                for s in keys:
                    if contains.get(s, 0) > 0:
                        acc += Fraction(pair[s], contains[s])
                scores[g] = acc / len(keys)
        if scores:
            return rank(scores, "backoff-pairwise")
    scores = {g: Fraction(contains[g], total) for g in candidates}
    return rank(scores, "backoff-frequency")


def random_page_document(
    rng: random.Random, catalog: Catalog, n_columns: int = 2, signs_per_column: int = 4
) -> SignDocument:
    """Random document laid out safely for render->recognize round-trips.

    Glyphs within a sign keep bbox gaps above the blob-grouping proximity
    (so distinct glyphs never merge) and below the sign-split floor (so one
    sign never splits): vertical gaps 8..11 px, horizontal gaps 10..18 px.
    """
    pool = catalog.all_ids()
    columns = []
    counter = 0
    for _ in range(rng.randint(1, n_columns)):
        signs = []
        for _ in range(rng.randint(1, signs_per_column)):
            counter += 1
            placements = []
            y = 0
            rows = rng.randint(1, 3)
            for _ in range(rows):
                row_ids = rng.sample(pool, k=rng.choice((1, 1, 1, 2)))
                x = 0
                row_h = 0
                for gid in row_ids:
                    w, h = catalog.asset_size(gid)
                    placements.append(GlyphPlacement(gid, x, y, len(placements)))
                    x += w + rng.randint(10, 18)
                    row_h = max(row_h, h)
                y += row_h + rng.randint(8, 11)
            signs.append(Sign(f"s{counter}", placements))
        columns.append(signs)
    return SignDocument(columns=columns)


def recovery_stats(truth, result, coord_tol: int | None = None):
    """Match recognized glyphs to rendered ground truth, nearest-first.

    Returns (recovered, total): recovered counts truth glyphs whose matched
    recognition carries the right code (and, when coord_tol is given, sits
    within that many pixels of the stamped position).
    """
    available = list(range(len(result.recognized)))
    recovered = 0
    for t in truth:
        best = None
        best_d = None
        for i in available:
            r = result.recognized[i]
            d = abs(r.bbox.min_x - t.x) + abs(r.bbox.min_y - t.y)
            if best_d is None or d < best_d:
                best, best_d = i, d
        if best is None:
            continue
        r = result.recognized[best]
        if r.glyph.code() == t.code:
            if coord_tol is None or (
                abs(r.bbox.min_x - t.x) <= coord_tol and abs(r.bbox.min_y - t.y) <= coord_tol
            ):
                recovered += 1
                available.remove(best)
    return recovered, len(truth)


def square_catalog(tmp_path: Path, sizes: dict[str, tuple[int, int]]) -> Catalog:
    """Tiny catalog whose assets are solid rectangles of the given sizes."""
    from PIL import Image

    (tmp_path / "assets").mkdir(exist_ok=True)
    lines = ["#iswa-manifest v1", "#catalog-version tiny", f"#count {len(sizes)}"]
    for code, (w, h) in sorted(sizes.items()):
        asset = f"assets/{code}.png"
        Image.new("1", (w, h), 0).save(tmp_path / asset)
        lines.append("\t".join((code, f"square {w}x{h}", "hand", "side=a", asset, "-")))
    manifest = tmp_path / "manifest.tsv"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return load_catalog(manifest)
