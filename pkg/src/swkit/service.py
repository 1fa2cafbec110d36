"""HTTP/JSON service: the application-control layer binding catalog,
documents, corpus, prediction, and recognition together.

Catalog and templates are loaded once and shared read-only; corpus writes
are serialized behind a lock; recognition jobs move through an enforced
state machine (queued -> running -> awaiting-review|failed, awaiting-review
-> finalized) with one review per job. The /predict endpoint returns the
library's canonical JSON bytes verbatim.
"""

from __future__ import annotations

import io
import json
import os
import re
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, Request, Response

from . import predict as predict_mod
from .canonical import canonical_json
from .catalog import (
    Catalog,
    choice_boxes_for,
    filter_glyphs,
    load_catalog,
    regions_for_puppet,
)
from .codes import GlyphId, parse_glyph_id
from .corpus import CorpusStore, build_model, stats_frequency
from .errors import (
    BadEditTarget,
    EmptyModel,
    EmptySign,
    IllegalTransition,
    InvalidCode,
    SwkitError,
    UnknownGlyph,
)
from .ogr import (
    RecognizerConfig,
    ReviewEdit,
    apply_review,
    draw_overlay,
    recognize,
    report_bytes,
    report_to_result,
)
from .ogr.raster import RasterPage
from .swml import GlyphPlacement, Sign, parse_swml, serialize_swml

JOB_TRANSITIONS = {
    "queued": {"running"},
    "running": {"awaiting-review", "failed"},
    "awaiting-review": {"finalized"},
    "failed": set(),
    "finalized": set(),
}

_DOC_ID = re.compile(r"^[a-z0-9][a-z0-9_-]{0,63}$")


@dataclass
class JobRecord:
    job_id: str
    kind: str = "ogr"
    state: str = "queued"
    error: str | None = None
    created_at: str = ""
    artifacts: dict[str, str] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "job_id": self.job_id,
            "kind": self.kind,
            "state": self.state,
            "error": self.error,
            "created_at": self.created_at,
            "artifacts": self.artifacts,
        }


class JobStore:
    """In-memory job records with enforced state transitions."""

    def __init__(self) -> None:
        self._jobs: dict[str, JobRecord] = {}
        self._lock = threading.Lock()

    def create(self) -> JobRecord:
        job = JobRecord(
            job_id=uuid.uuid4().hex[:12],
            created_at=datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
        )
        with self._lock:
            self._jobs[job.job_id] = job
        return job

    def get(self, job_id: str) -> JobRecord | None:
        return self._jobs.get(job_id)

    def transition(self, job_id: str, new_state: str) -> JobRecord:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                raise KeyError(job_id)
            if new_state not in JOB_TRANSITIONS[job.state]:
                raise IllegalTransition(f"{job.state} -> {new_state}")
            job.state = new_state
            return job


@dataclass
class ServiceConfig:
    catalog_path: Path
    storage_dir: Path
    predict_k: int = predict_mod.DEFAULT_K
    granularity: str = "base"
    ogr: RecognizerConfig = field(default_factory=RecognizerConfig)
    ingest_finalized: bool = True
    ui_dir: Path | None = None  # static editor build, mounted at /ui when set

    @classmethod
    def from_env(cls) -> "ServiceConfig":
        from .sample_catalog import shipped_manifest_path

        catalog = os.environ.get("SWKIT_CATALOG") or str(shipped_manifest_path())
        storage = os.environ.get("SWKIT_STORAGE") or "swkit-storage"
        k = int(os.environ.get("SWKIT_PREDICT_K", predict_mod.DEFAULT_K))
        gran = os.environ.get("SWKIT_GRANULARITY", "base")
        ogr_path = os.environ.get("SWKIT_OGR_CONFIG")
        ogr = RecognizerConfig.from_file(ogr_path) if ogr_path else RecognizerConfig()
        return cls(Path(catalog), Path(storage), k, gran, ogr)


class ServiceState:
    def __init__(self, config: ServiceConfig):
        self.config = config
        self.catalog: Catalog = load_catalog(config.catalog_path)
        self.storage = Path(config.storage_dir)
        (self.storage / "documents").mkdir(parents=True, exist_ok=True)
        (self.storage / "jobs").mkdir(parents=True, exist_ok=True)
        self.corpus_path = self.storage / "corpus.jsonl"
        if self.corpus_path.exists():
            self.store = CorpusStore.load(self.corpus_path, self.catalog)
        else:
            self.store = CorpusStore(self.catalog)
        self.jobs = JobStore()
        self.results: dict[str, bytes] = {}  # job_id -> report bytes
        self.write_lock = threading.Lock()
        self._model = None
        self._model_rev = -1

    def model(self):
        # rebuilt lazily when the corpus revision moves; catalog stays fixed
        with self.write_lock:
            if self._model is None or self._model_rev != self.store.revision:
                self._model = build_model(self.store, self.config.granularity)
                self._model_rev = self.store.revision
            return self._model


def _bad_request(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail=message)


def _parse_codes(codes, what: str) -> list[GlyphId]:
    if not isinstance(codes, list):
        raise _bad_request(f"{what} must be a list of glyph codes")
    out = []
    for code in codes:
        try:
            out.append(parse_glyph_id(code))
        except SwkitError as exc:
            raise _bad_request(f"bad code {code!r}: {exc}") from exc
    return out


def create_app(config: ServiceConfig) -> FastAPI:
    from fastapi.middleware.cors import CORSMiddleware

    state = ServiceState(config)
    app = FastAPI(title="swkit", version="0.1.0")
    app.state.swkit = state
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    if config.ui_dir is not None and Path(config.ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    def canonical(obj) -> Response:
        return Response(content=canonical_json(obj), media_type="application/json")

    # --- catalog ---

    @app.get("/catalog/categories")
    def categories() -> Response:
        cats = [
            {
                "category": c,
                "groups": state.catalog.groups(c),
                "glyph_count": sum(
                    len(state.catalog._hierarchy[c][g]) for g in state.catalog.groups(c)
                ),
            }
            for c in state.catalog.categories()
        ]
        return canonical({"categories": cats})

    @app.get("/catalog/regions")
    def regions() -> Response:
        return canonical(
            {
                "regions": [
                    {
                        "name": r.name,
                        "kind": r.kind,
                        "linked_scopes": [[c, g] for c, g in r.linked_scopes],
                    }
                    for r in regions_for_puppet(state.catalog)
                ]
            }
        )

    @app.get("/catalog/choice-boxes")
    def choice_boxes(region: str) -> Response:
        try:
            boxes = choice_boxes_for(state.catalog, region)
        except SwkitError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return canonical(
            {"region": region,
             "boxes": [{"attribute": b.attribute, "options": list(b.options)} for b in boxes]}
        )

    @app.get("/catalog/glyphs")
    def glyphs(request: Request) -> Response:
        params = dict(request.query_params)
        region = params.pop("region", None)
        if region is None:
            raise _bad_request("region query parameter is required")
        try:
            descs = filter_glyphs(state.catalog, region, params)
        except SwkitError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return canonical(
            {
                "glyphs": [
                    {
                        "code": d.id.code(),
                        "name": d.name,
                        "region": d.anatomic_tag,
                        "attributes": dict(d.filter_attributes),
                        "exception": d.exception,
                    }
                    for d in descs
                ]
            }
        )

    @app.get("/catalog/glyphs/{code}/asset")
    def glyph_asset(code: str) -> Response:
        try:
            gid = parse_glyph_id(code)
            path = state.catalog.asset_path(gid)
        except SwkitError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        return Response(content=path.read_bytes(), media_type="image/png")

    # --- signs / corpus ---

    @app.post("/signs")
    async def post_sign(request: Request) -> Response:
        body = await request.json()
        placements = body.get("placements")
        if not isinstance(placements, list) or not placements:
            raise _bad_request("placements must be a nonempty list")
        parsed = []
        for p in placements:
            codes = _parse_codes([p.get("code")], "placements")
            try:
                parsed.append(
                    GlyphPlacement(codes[0], int(p["x"]), int(p["y"]), int(p.get("z", 0)))
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise _bad_request(f"bad placement {p!r}") from exc
        sign = Sign(
            sign_id=body.get("sign_id") or f"sign-{uuid.uuid4().hex[:8]}",
            placements=parsed,
            gloss_labels=[str(g) for g in body.get("gloss_labels", [])],
            source=body.get("source", "editor"),
        )
        try:
            with state.write_lock:
                entry_ids = state.store.ingest(sign, body.get("provenance", "editor"))
                state.store.save(state.corpus_path)
        except (UnknownGlyph, EmptySign, ValueError) as exc:
            raise _bad_request(str(exc)) from exc
        state.model()  # refresh eagerly so reads stay cheap
        return canonical({"entry_ids": entry_ids})

    @app.get("/signs")
    def list_signs() -> Response:
        return canonical(
            {
                "entries": [
                    {
                        "entry_id": e.entry_id,
                        "occurrences": e.occurrences,
                        "provenance": e.provenance,
                        "review_status": e.review_status,
                        "codes": sorted(g.code() for g in e.glyph_ids()),
                    }
                    for e in state.store.entries.values()
                ]
            }
        )

    @app.get("/corpus/stats")
    def corpus_stats() -> Response:
        freq = stats_frequency(state.store)
        return canonical(
            {
                "total_signs": state.store.total_signs,
                "distinct_entries": len(state.store),
                "frequency": {g.code(): n for g, n in sorted(freq.items())},
            }
        )

    # --- documents ---

    def _doc_path(doc_id: str) -> Path:
        if not _DOC_ID.match(doc_id):
            raise _bad_request("document id must be a lowercase slug")
        return state.storage / "documents" / f"{doc_id}.swml"

    @app.put("/documents/{doc_id}")
    async def put_document(doc_id: str, request: Request) -> Response:
        data = await request.body()
        try:
            doc = parse_swml(data)
            canonical_bytes = serialize_swml(doc)
        except SwkitError as exc:
            raise _bad_request(str(exc)) from exc
        _doc_path(doc_id).write_bytes(canonical_bytes)
        return Response(content=canonical_bytes, media_type="application/xml")

    @app.get("/documents/{doc_id}")
    def get_document(doc_id: str) -> Response:
        path = _doc_path(doc_id)
        if not path.exists():
            raise HTTPException(status_code=404, detail=f"no document {doc_id!r}")
        return Response(content=path.read_bytes(), media_type="application/xml")

    # --- prediction ---

    @app.post("/predict")
    async def predict(request: Request) -> Response:
        body = await request.json()
        placed = _parse_codes(body.get("placed", []), "placed")
        k = body.get("k", state.config.predict_k)
        if not isinstance(k, int) or k < 1:
            raise _bad_request("k must be a positive integer")
        try:
            suggestions = predict_mod.suggest(set(placed), state.model(), k)
        except EmptyModel as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return Response(
            content=predict_mod.suggestions_to_json(suggestions),
            media_type="application/json",
        )

    # --- OGR jobs ---

    def _job_dir(job_id: str) -> Path:
        return state.storage / "jobs" / job_id

    def _get_job(job_id: str) -> JobRecord:
        job = state.jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"no job {job_id!r}")
        return job

    @app.post("/ogr/jobs")
    async def submit_job(request: Request) -> Response:
        from PIL import Image, UnidentifiedImageError

        data = await request.body()
        if not data:
            raise _bad_request("empty upload")
        try:
            with Image.open(io.BytesIO(data)) as img:
                page = RasterPage(np.asarray(img.convert("L")))
        except (UnidentifiedImageError, OSError, ValueError) as exc:
            raise _bad_request(f"upload is not a decodable image: {exc}") from exc
        job = state.jobs.create()
        job_dir = _job_dir(job.job_id)
        job_dir.mkdir(parents=True, exist_ok=True)
        (job_dir / "input.png").write_bytes(data)
        state.jobs.transition(job.job_id, "running")
        try:
            result = recognize(page, state.catalog, state.config.ogr)
            report = report_bytes(result)
            (job_dir / "report.json").write_bytes(report)
            draft = serialize_swml(apply_review(result, [], state.catalog).document)
            (job_dir / "draft.swml").write_bytes(draft)
            draw_overlay(page, result).save(job_dir / "overlay.png")
            state.results[job.job_id] = report
            job.artifacts = {
                "report": f"/ogr/jobs/{job.job_id}/report",
                "draft": f"/ogr/jobs/{job.job_id}/draft",
                "overlay": f"/ogr/jobs/{job.job_id}/overlay",
            }
            state.jobs.transition(job.job_id, "awaiting-review")
        except SwkitError as exc:
            job.error = str(exc)
            state.jobs.transition(job.job_id, "failed")
        return canonical(job.to_dict())

    @app.get("/ogr/jobs/{job_id}")
    def get_job(job_id: str) -> Response:
        return canonical(_get_job(job_id).to_dict())

    @app.get("/ogr/jobs/{job_id}/report")
    def job_report(job_id: str) -> Response:
        job = _get_job(job_id)
        report = state.results.get(job_id)
        if report is None:
            raise HTTPException(status_code=409, detail=f"job is {job.state}")
        return Response(content=report, media_type="application/json")

    @app.get("/ogr/jobs/{job_id}/draft")
    def job_draft(job_id: str) -> Response:
        _get_job(job_id)
        path = _job_dir(job_id) / "draft.swml"
        if not path.exists():
            raise HTTPException(status_code=409, detail="no draft yet")
        return Response(content=path.read_bytes(), media_type="application/xml")

    @app.get("/ogr/jobs/{job_id}/overlay")
    def job_overlay(job_id: str) -> Response:
        _get_job(job_id)
        path = _job_dir(job_id) / "overlay.png"
        if not path.exists():
            raise HTTPException(status_code=409, detail="no overlay yet")
        return Response(content=path.read_bytes(), media_type="image/png")

    @app.get("/ogr/jobs/{job_id}/document")
    def job_document(job_id: str) -> Response:
        _get_job(job_id)
        path = _job_dir(job_id) / "final.swml"
        if not path.exists():
            raise HTTPException(status_code=404, detail="job not finalized")
        return Response(content=path.read_bytes(), media_type="application/xml")

    @app.post("/ogr/jobs/{job_id}/review")
    async def review_job(job_id: str, request: Request) -> Response:
        job = _get_job(job_id)
        body = await request.json()
        try:
            edits = [ReviewEdit.from_dict(e) for e in body.get("edits", [])]
        except (BadEditTarget, InvalidCode) as exc:
            raise _bad_request(str(exc)) from exc
        with state.write_lock:
            if job.state != "awaiting-review":
                raise HTTPException(
                    status_code=409, detail=f"job is {job.state}, not awaiting-review"
                )
            result = report_to_result(json.loads(state.results[job_id]))
            try:
                outcome = apply_review(result, edits, state.catalog)
            except (BadEditTarget, InvalidCode) as exc:
                raise _bad_request(str(exc)) from exc
            final = serialize_swml(outcome.document)
            (_job_dir(job_id) / "final.swml").write_bytes(final)
            if body.get("ingest", state.config.ingest_finalized) and outcome.document.signs():
                state.store.ingest(outcome.document, "ogr", review_status="reviewed")
                state.store.save(state.corpus_path)
            state.jobs.transition(job_id, "finalized")
            job.artifacts["document"] = f"/ogr/jobs/{job_id}/document"
        return Response(content=final, media_type="application/xml")

    return app


def serve(config: ServiceConfig, host: str = "127.0.0.1", port: int = 8772) -> None:
    import uvicorn

    uvicorn.run(create_app(config), host=host, port=port, log_level="info")
