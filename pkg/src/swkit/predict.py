"""Hint-panel engine: rank glyphs compatible with those already placed.

Scoring is conditional support over the co-occurrence model with two
back-off tiers, all computed with exact rationals:

  exact              score(g) = support(placed + g) / support(placed),
                     used while support(placed) yields candidates
  backoff-pairwise   mean over placed s of joint(s,g) / contains(s),
                     when the joint placed set never co-occurs
  backoff-frequency  contains(g) / total_signs,
                     when nothing is placed or no pair co-occurs

Ranking is score desc, then global frequency desc, then code ascending;
ties are therefore fully deterministic. Placed glyphs are never suggested.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .canonical import canonical_json
from .codes import GlyphId
from .corpus import CooccurrenceModel
from .errors import EmptyModel
from .swml import GlyphPlacement

DEFAULT_K = 12

TIER_EXACT = "exact"
TIER_PAIRWISE = "backoff-pairwise"
TIER_FREQUENCY = "backoff-frequency"


@dataclass(frozen=True)
class Suggestion:
    glyph: GlyphId
    score: Fraction
    tier: str


def _ranked(
    scores: dict[GlyphId, Fraction], model: CooccurrenceModel, tier: str, k: int
) -> list[Suggestion]:
    order = sorted(scores, key=lambda g: (-scores[g], -model.contains_count(g), g))
    return [Suggestion(g, scores[g], tier) for g in order[:k]]


def suggest(
    placed: Iterable[GlyphId], model: CooccurrenceModel, k: int = DEFAULT_K
) -> list[Suggestion]:
    """Top-k compatible glyph keys for the placed set; pure and deterministic."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if model.total_signs == 0:
        raise EmptyModel("model built from an empty corpus")
    keys = {model.truncate(g) for g in placed}
    candidates = [g for g in model.contains if g not in keys]

    if keys:
        containing = [(t, w) for t, w in model.transactions if keys <= t]
        base = sum(w for _, w in containing)
        if base > 0:
            scores = {}
            for g in candidates:
                joint = sum(w for t, w in containing if g in t)
                if joint > 0:
                    scores[g] = Fraction(joint, base)
            if scores:
                return _ranked(scores, model, TIER_EXACT, k)
        scores = {}
        for g in candidates:
            if any(model.joint_count(s, g) > 0 for s in keys):
                acc = Fraction(0)
                for s in keys:
                    c = model.contains_count(s)
                    if c > 0:
                        acc += Fraction(model.joint_count(s, g), c)
                scores[g] = acc / len(keys)
        if scores:
            return _ranked(scores, model, TIER_PAIRWISE, k)

    scores = {g: Fraction(model.contains_count(g), model.total_signs) for g in candidates}
    return _ranked(scores, model, TIER_FREQUENCY, k)


@dataclass
class CompositionSession:
    """Placement set of the sign under composition, as the hint panel sees it."""

    model: CooccurrenceModel
    k: int = DEFAULT_K
    placements: list[GlyphPlacement] = field(default_factory=list)

    def add(self, placement: GlyphPlacement) -> None:
        self.placements.append(placement)

    def remove(self, placement: GlyphPlacement) -> None:
        self.placements.remove(placement)

    def placed_ids(self) -> set[GlyphId]:
        return {p.glyph for p in self.placements}


def refresh(session: CompositionSession, model: CooccurrenceModel | None = None) -> list[Suggestion]:
    """Suggestions for the session's current placed set; call after every edit."""
    return suggest(session.placed_ids(), model or session.model, session.k)


def suggestions_to_json(suggestions: list[Suggestion]) -> bytes:
    """Canonical JSON byte form, shared verbatim by the HTTP service."""
    return canonical_json(
        {
            "suggestions": [
                {"code": s.glyph.code(), "score": str(s.score), "tier": s.tier}
                for s in suggestions
            ]
        }
    )
