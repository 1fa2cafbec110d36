"""Structured corpus of signs and co-occurrence statistics.

Signs are stored normalized (bbox at origin) and deduplicated: ingesting a
sign whose normalized placement set is already present bumps an occurrence
counter instead of adding a row, so statistics weighting stays explicit.
Counting is sign-level throughout: a glyph occurring twice inside one sign
counts once for that sign.

Persistence is a single JSON-lines corpus file plus a checksummed model
snapshot; formats are documented in docs/formats.md.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from itertools import combinations
from pathlib import Path

from .canonical import canonical_json
from .catalog import Catalog
from .codes import GlyphId, parse_glyph_id
from .errors import CorruptModel, EmptySign, IoFailure, UnknownGlyph, VersionMismatch
from .swml import GlyphPlacement, Sign, SignDocument, normalize_sign

CORPUS_FORMAT = "swkit-corpus"
MODEL_FORMAT = "swkit-cooccurrence"
FORMAT_VERSION = 1

PROVENANCES = ("editor", "ogr", "import")
GRANULARITIES = ("full", "base")


@dataclass
class CorpusEntry:
    entry_id: str
    sign: Sign  # normalized
    provenance: str
    review_status: str = "raw"
    ingested_at: str = ""
    occurrences: int = 1

    def glyph_ids(self) -> set[GlyphId]:
        return self.sign.glyph_ids()


def _content_key(sign: Sign) -> str:
    payload = sorted((p.glyph.code(), p.x, p.y) for p in sign.placements)
    digest = hashlib.sha1(canonical_json(payload)).hexdigest()
    return f"e{digest[:16]}"


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


class CorpusStore:
    """Single-writer in-memory store bound to a catalog.

    Entries keep insertion order; ingest order never affects statistics.
    """

    def __init__(self, catalog: Catalog):
        self.catalog = catalog
        self.entries: dict[str, CorpusEntry] = {}
        self.revision = 0

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def total_signs(self) -> int:
        return sum(e.occurrences for e in self.entries.values())

    def ingest(
        self,
        item: Sign | SignDocument,
        provenance: str,
        *,
        review_status: str = "raw",
        when: str | None = None,
    ) -> list[str]:
        """Store normalized signs; returns one entry id per ingested sign."""
        if provenance not in PROVENANCES:
            raise ValueError(f"bad provenance {provenance!r}")
        signs = item.signs() if isinstance(item, SignDocument) else [item]
        out = []
        for sign in signs:
            if not sign.placements:
                raise EmptySign(f"sign {sign.sign_id!r} has no placements")
            for p in sign.placements:
                if p.glyph not in self.catalog:
                    raise UnknownGlyph(f"{p.glyph} not in catalog")
            normal = normalize_sign(sign, self.catalog)
            key = _content_key(normal)
            entry = self.entries.get(key)
            if entry is None:
                self.entries[key] = CorpusEntry(
                    entry_id=key,
                    sign=normal,
                    provenance=provenance,
                    review_status=review_status,
                    ingested_at=when or _now(),
                )
            else:
                entry.occurrences += 1
            out.append(key)
        self.revision += 1
        return out

    # --- persistence ---

    def save(self, path: str | Path) -> None:
        lines = [canonical_json({"format": CORPUS_FORMAT, "version": FORMAT_VERSION}).decode()]
        for entry in self.entries.values():
            lines.append(
                canonical_json(
                    {
                        "entry_id": entry.entry_id,
                        "sign": {
                            "sign_id": entry.sign.sign_id,
                            "placements": [
                                [p.glyph.code(), p.x, p.y, p.z] for p in entry.sign.placements
                            ],
                            "gloss_labels": entry.sign.gloss_labels,
                            "source": entry.sign.source,
                        },
                        "provenance": entry.provenance,
                        "review_status": entry.review_status,
                        "ingested_at": entry.ingested_at,
                        "occurrences": entry.occurrences,
                    }
                ).decode()
            )
        try:
            Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
        except OSError as exc:
            raise IoFailure(str(exc)) from exc

    @classmethod
    def load(cls, path: str | Path, catalog: Catalog) -> "CorpusStore":
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise IoFailure(str(exc)) from exc
        lines = [l for l in text.splitlines() if l.strip()]
        if not lines:
            raise CorruptModel("empty corpus file")
        try:
            header = json.loads(lines[0])
        except json.JSONDecodeError as exc:
            raise CorruptModel(f"bad corpus header: {exc}") from exc
        if header.get("format") != CORPUS_FORMAT:
            raise CorruptModel(f"not a corpus file: {header.get('format')!r}")
        if header.get("version") != FORMAT_VERSION:
            raise VersionMismatch(f"corpus version {header.get('version')!r}")
        store = cls(catalog)
        for lineno, line in enumerate(lines[1:], start=2):
            try:
                rec = json.loads(line)
                sign = Sign(
                    sign_id=rec["sign"]["sign_id"],
                    placements=[
                        GlyphPlacement(parse_glyph_id(c), x, y, z)
                        for c, x, y, z in rec["sign"]["placements"]
                    ],
                    gloss_labels=list(rec["sign"]["gloss_labels"]),
                    source=rec["sign"]["source"],
                )
                entry = CorpusEntry(
                    entry_id=rec["entry_id"],
                    sign=sign,
                    provenance=rec["provenance"],
                    review_status=rec["review_status"],
                    ingested_at=rec["ingested_at"],
                    occurrences=int(rec["occurrences"]),
                )
            except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
                raise CorruptModel(f"corpus line {lineno}: {exc}") from exc
            store.entries[entry.entry_id] = entry
        return store


def stats_frequency(store: CorpusStore) -> dict[GlyphId, int]:
    """Per glyph, the number of stored signs containing it (duplicate-weighted)."""
    out: dict[GlyphId, int] = {}
    for entry in store.entries.values():
        for gid in entry.glyph_ids():
            out[gid] = out.get(gid, 0) + entry.occurrences
    return out


# --- co-occurrence model ---


@dataclass
class CooccurrenceModel:
    granularity: str
    total_signs: int
    contains: dict[GlyphId, int]
    joint: dict[tuple[GlyphId, GlyphId], int]
    # weighted distinct transactions; tier-1 support over arbitrary placed
    # sets is not derivable from pairwise counts, so the model carries them
    transactions: list[tuple[frozenset[GlyphId], int]] = field(default_factory=list)

    def truncate(self, gid: GlyphId) -> GlyphId:
        return gid.base_key() if self.granularity == "base" else gid

    def contains_count(self, gid: GlyphId) -> int:
        return self.contains.get(gid, 0)

    def joint_count(self, a: GlyphId, b: GlyphId) -> int:
        if a == b:
            return self.contains_count(a)
        key = (a, b) if a < b else (b, a)
        return self.joint.get(key, 0)

    def support(self, keys: set[GlyphId] | frozenset[GlyphId]) -> int:
        """Number of signs (duplicate-weighted) containing every key."""
        if not keys:
            return self.total_signs
        return sum(w for t, w in self.transactions if keys <= t)

    def validate(self) -> None:
        for (a, b), n in self.joint.items():
            if not a < b:
                raise AssertionError(f"joint key not ordered: {a}, {b}")
            bound = min(self.contains_count(a), self.contains_count(b))
            if not 0 <= n <= bound <= self.total_signs:
                raise AssertionError(f"joint({a},{b})={n} violates bound {bound}")


def build_model(store: CorpusStore, granularity: str = "base") -> CooccurrenceModel:
    """Sign-level contains/joint counts over the store at the given granularity."""
    if granularity not in GRANULARITIES:
        raise ValueError(f"bad granularity {granularity!r}")
    folded: dict[frozenset[GlyphId], int] = {}
    for entry in store.entries.values():
        keys = frozenset(
            gid.base_key() if granularity == "base" else gid for gid in entry.glyph_ids()
        )
        folded[keys] = folded.get(keys, 0) + entry.occurrences
    transactions = sorted(
        folded.items(), key=lambda kv: sorted(g.code() for g in kv[0])
    )
    contains: dict[GlyphId, int] = {}
    joint: dict[tuple[GlyphId, GlyphId], int] = {}
    total = 0
    for keys, weight in transactions:
        total += weight
        for gid in keys:
            contains[gid] = contains.get(gid, 0) + weight
        for a, b in combinations(sorted(keys), 2):
            joint[(a, b)] = joint.get((a, b), 0) + weight
    model = CooccurrenceModel(
        granularity=granularity,
        total_signs=total,
        contains=contains,
        joint=joint,
        transactions=[(k, w) for k, w in transactions],
    )
    model.validate()
    return model


def _model_payload(model: CooccurrenceModel) -> dict:
    return {
        "format": MODEL_FORMAT,
        "version": FORMAT_VERSION,
        "granularity": model.granularity,
        "total_signs": model.total_signs,
        "contains": {g.code(): n for g, n in sorted(model.contains.items())},
        "joint": [[a.code(), b.code(), n] for (a, b), n in sorted(model.joint.items())],
        "transactions": [
            [sorted(g.code() for g in keys), w] for keys, w in model.transactions
        ],
    }


def persist_model(model: CooccurrenceModel, sink: str | Path) -> None:
    payload = _model_payload(model)
    payload["checksum"] = hashlib.sha256(canonical_json(payload)).hexdigest()
    try:
        Path(sink).write_bytes(canonical_json(payload) + b"\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc


def load_model(source: str | Path) -> CooccurrenceModel:
    try:
        data = Path(source).read_bytes()
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    try:
        payload = json.loads(data)
    except json.JSONDecodeError as exc:
        raise CorruptModel(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != MODEL_FORMAT:
        raise CorruptModel("not a co-occurrence model file")
    if payload.get("version") != FORMAT_VERSION:
        raise VersionMismatch(f"model schema version {payload.get('version')!r}")
    stated = payload.pop("checksum", None)
    if stated != hashlib.sha256(canonical_json(payload)).hexdigest():
        raise CorruptModel("checksum mismatch")
    try:
        model = CooccurrenceModel(
            granularity=payload["granularity"],
            total_signs=int(payload["total_signs"]),
            contains={parse_glyph_id(c): int(n) for c, n in payload["contains"].items()},
            joint={
                (parse_glyph_id(a), parse_glyph_id(b)): int(n)
                for a, b, n in payload["joint"]
            },
            transactions=[
                (frozenset(parse_glyph_id(c) for c in codes), int(w))
                for codes, w in payload["transactions"]
            ],
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptModel(f"bad model payload: {exc}") from exc
    model.validate()
    return model


# --- frequent glyph sets ---


def pattern_report(
    store: CorpusStore, min_support: int
) -> list[tuple[frozenset[GlyphId], int]]:
    """Frequent glyph sets (size >= 2) via level-wise Apriori growth.

    Sorted by support desc, then set size desc, then codes ascending.
    """
    if min_support < 1:
        raise ValueError("min_support must be >= 1")
    transactions = [
        (frozenset(e.glyph_ids()), e.occurrences) for e in store.entries.values()
    ]

    def count(itemsets: list[frozenset[GlyphId]]) -> dict[frozenset[GlyphId], int]:
        counts = {s: 0 for s in itemsets}
        for t, w in transactions:
            for s in itemsets:
                if s <= t:
                    counts[s] += w
        return counts

    singles: dict[GlyphId, int] = {}
    for t, w in transactions:
        for gid in t:
            singles[gid] = singles.get(gid, 0) + w
    level = sorted(frozenset([g]) for g, n in singles.items() if n >= min_support)
    frequent: dict[frozenset[GlyphId], int] = {}
    size = 1
    while level:
        size += 1
        level_set = set(level)
        candidates = set()
        for i, a in enumerate(level):
            for b in level[i + 1:]:
                union = a | b
                if len(union) != size:
                    continue
                # Apriori pruning: every (size-1)-subset must be frequent
                if all(union - {x} in level_set for x in union):
                    candidates.add(union)
        counts = count(sorted(candidates, key=lambda s: sorted(g.code() for g in s)))
        level = sorted(
            (s for s, n in counts.items() if n >= min_support),
            key=lambda s: sorted(g.code() for g in s),
        )
        for s in level:
            frequent[s] = counts[s]
    return sorted(
        frequent.items(),
        key=lambda kv: (-kv[1], -len(kv[0]), sorted(g.code() for g in kv[0])),
    )
