"""User review of recognition output and finalization into a document.

No recognition is 100% accurate, so every recognized glyph and unresolved
blob stays addressable until the user signs off: ``r<i>`` targets the i-th
recognized glyph, ``b<i>`` the i-th unresolved blob, and sign drafts are
targeted by their draft id (``s1``, ``s2``, ...).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..catalog import Catalog
from ..codes import GlyphId, parse_glyph_id
from ..errors import BadEditTarget, InvalidCode, MalformedCode, FieldOutOfRange
from ..swml import Box, DocMeta, GlyphPlacement, Sign, SignDocument
from .components import union_box
from .pipeline import RecognitionResult

EDIT_OPS = ("accept", "replace", "delete", "add", "merge", "split")


@dataclass(frozen=True)
class ReviewEdit:
    op: str
    target: str | None = None
    code: GlyphId | None = None
    bbox: Box | None = None
    targets: tuple[str, ...] = ()
    at_y: int | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "ReviewEdit":
        op = data.get("op")
        if op not in EDIT_OPS:
            raise BadEditTarget(f"unknown edit op {op!r}")
        code = None
        if "code" in data:
            try:
                code = parse_glyph_id(data["code"])
            except (MalformedCode, FieldOutOfRange) as exc:
                raise InvalidCode(str(exc)) from exc
        bbox = Box(*data["bbox"]) if "bbox" in data else None
        return cls(
            op=op,
            target=data.get("target"),
            code=code,
            bbox=bbox,
            targets=tuple(data.get("targets", ())),
            at_y=data.get("at_y"),
        )


@dataclass
class ReviewOutcome:
    document: SignDocument
    warnings: list[str] = field(default_factory=list)


class _Draft:
    def __init__(self, sign_id: str, column: int, indices: list[int]):
        self.sign_id = sign_id
        self.column = column
        self.indices = list(indices)
        self.extras: list[int] = []


class _ReviewState:
    def __init__(self, result: RecognitionResult, catalog: Catalog | None):
        self.result = result
        self.catalog = catalog
        self.codes: list[GlyphId | None] = [r.glyph for r in result.recognized]
        self.blob_state = ["pending"] * len(result.unresolved)
        self.added: list[tuple[GlyphId, Box]] = []
        self.drafts = [_Draft(d.sign_id, d.column, d.glyph_indices) for d in result.signs]
        self.split_seq = 0

    # --- target resolution ---

    def recognized_index(self, target: str | None) -> int:
        if target and target.startswith("r") and target[1:].isdigit():
            i = int(target[1:])
            if i < len(self.codes) and self.codes[i] is not None:
                return i
        raise BadEditTarget(f"no live recognized glyph {target!r}")

    def blob_index(self, target: str) -> int:
        if target.startswith("b") and target[1:].isdigit():
            i = int(target[1:])
            if i < len(self.blob_state) and self.blob_state[i] == "pending":
                return i
        raise BadEditTarget(f"no pending blob {target!r}")

    def draft(self, target: str | None) -> _Draft:
        for d in self.drafts:
            if d.sign_id == target:
                return d
        raise BadEditTarget(f"no sign draft {target!r}")

    def check_code(self, code: GlyphId | None) -> GlyphId:
        if code is None:
            raise InvalidCode("edit requires a glyph code")
        if self.catalog is not None and code not in self.catalog:
            raise InvalidCode(f"{code} not in catalog")
        return code

    # --- geometry housekeeping ---

    def member_boxes(self, draft: _Draft) -> list[Box]:
        boxes = [self.result.recognized[i].bbox for i in draft.indices
                 if self.codes[i] is not None]
        boxes.extend(self.added[j][1] for j in draft.extras)
        return boxes

    def assign_box(self, box: Box) -> _Draft:
        """Draft whose extent contains the box center, else the nearest one."""
        cx = (box.min_x + box.max_x) / 2
        cy = (box.min_y + box.max_y) / 2
        best = None
        best_dist = None
        for d in self.drafts:
            boxes = self.member_boxes(d)
            if not boxes:
                continue
            u = union_box(boxes)
            if u.min_x <= cx < u.max_x and u.min_y <= cy < u.max_y:
                return d
            ux = min(abs(cx - u.min_x), abs(cx - u.max_x))
            uy = min(abs(cy - u.min_y), abs(cy - u.max_y))
            dist = ux * ux + uy * uy
            if best_dist is None or dist < best_dist:
                best, best_dist = d, dist
        if best is None:
            self.split_seq += 1
            best = _Draft(f"added-{self.split_seq}", 0, [])
            self.drafts.append(best)
        return best


def apply_review(
    result: RecognitionResult,
    edits: list[ReviewEdit],
    catalog: Catalog | None = None,
) -> ReviewOutcome:
    """Apply edits in order and finalize into an SWML-ready document.

    With no edits the document holds exactly the recognized sign drafts.
    Unresolved blobs that no edit resolves are dropped with a warning.
    """
    state = _ReviewState(result, catalog)
    for edit in edits:
        if edit.op == "accept":
            state.recognized_index(edit.target)
        elif edit.op == "replace":
            i = state.recognized_index(edit.target)
            state.codes[i] = state.check_code(edit.code)
        elif edit.op == "delete":
            if edit.target and edit.target.startswith("b"):
                state.blob_state[state.blob_index(edit.target)] = "deleted"
            else:
                state.codes[state.recognized_index(edit.target)] = None
        elif edit.op == "add":
            code = state.check_code(edit.code)
            if edit.target is not None:
                b = state.blob_index(edit.target)
                state.blob_state[b] = "resolved"
                box = edit.bbox or result.unresolved[b].bbox
            elif edit.bbox is not None:
                box = edit.bbox
            else:
                raise BadEditTarget("add requires a bbox or a blob target")
            state.added.append((code, box))
            state.assign_box(box).extras.append(len(state.added) - 1)
        elif edit.op == "merge":
            if len(edit.targets) < 2:
                raise BadEditTarget("merge requires at least two sign targets")
            first, *rest = [state.draft(t) for t in edit.targets]
            for d in rest:
                first.indices.extend(d.indices)
                first.extras.extend(d.extras)
                state.drafts.remove(d)
        elif edit.op == "split":
            if edit.at_y is None:
                raise BadEditTarget("split requires at_y")
            d = state.draft(edit.target)
            above_i = [i for i in d.indices if result.recognized[i].bbox.min_y < edit.at_y]
            below_i = [i for i in d.indices if i not in above_i]
            above_e = [j for j in d.extras if state.added[j][1].min_y < edit.at_y]
            below_e = [j for j in d.extras if j not in above_e]
            if (not above_i and not above_e) or (not below_i and not below_e):
                raise BadEditTarget(f"split at y={edit.at_y} leaves an empty side")
            d.indices, d.extras = above_i, above_e
            tail = _Draft(f"{d.sign_id}-b", d.column, below_i)
            tail.extras = below_e
            state.drafts.insert(state.drafts.index(d) + 1, tail)
        else:
            raise BadEditTarget(f"unknown edit op {edit.op!r}")

    # finalize
    by_column: dict[int, list[tuple[int, Sign]]] = {}
    for d in state.drafts:
        items: list[tuple[GlyphId, Box]] = [
            (state.codes[i], result.recognized[i].bbox)
            for i in d.indices
            if state.codes[i] is not None
        ]
        items.extend(state.added[j] for j in d.extras)
        if not items:
            continue
        origin = union_box([box for _, box in items])
        ordered = sorted(items, key=lambda t: (t[1].min_y, t[1].min_x, t[0]))
        placements = [
            GlyphPlacement(code, box.min_x - origin.min_x, box.min_y - origin.min_y, z)
            for z, (code, box) in enumerate(ordered)
        ]
        sign = Sign(sign_id=d.sign_id, placements=placements, source="ogr")
        by_column.setdefault(d.column, []).append((origin.min_y, sign))

    columns = [
        [sign for _, sign in sorted(by_column[c], key=lambda t: t[0])]
        for c in sorted(by_column)
    ]
    warnings = [
        f"unresolved blob b{i} at ({b.bbox.min_x},{b.bbox.min_y},"
        f"{b.bbox.max_x},{b.bbox.max_y}) dropped"
        for i, b in enumerate(result.unresolved)
        if state.blob_state[i] == "pending"
    ]
    document = SignDocument(meta=DocMeta(), columns=columns)
    document.validate()
    return ReviewOutcome(document=document, warnings=warnings)
