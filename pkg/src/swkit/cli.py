"""Command-line interface.

Exit codes: 0 success, 1 validation/processing failure, 2 usage error.
Every command offers machine-readable output via --json where it prints
anything structured.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click

from .canonical import canonical_json
from .catalog import choice_boxes_for, filter_glyphs, glyphs_in, load_catalog, regions_for_puppet
from .codes import parse_glyph_id
from .corpus import (
    CorpusStore,
    build_model,
    load_model,
    pattern_report,
    persist_model,
    stats_frequency,
)
from .errors import SwkitError
from .predict import DEFAULT_K, suggest, suggestions_to_json
from .sample_catalog import shipped_manifest_path
from .swml import parse_swml, serialize_swml


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SwkitError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(1)

    return wrapper


def _echo_json(obj) -> None:
    click.echo(canonical_json(obj).decode("utf-8"))


manifest_option = click.option(
    "--manifest",
    envvar="SWKIT_CATALOG",
    default=None,
    type=click.Path(path_type=Path),
    help="Catalog manifest (defaults to the shipped sample catalog).",
)


def _catalog(manifest: Path | None):
    return load_catalog(manifest or shipped_manifest_path())


@click.group()
@click.version_option(package_name="swkit", prog_name="swkit")
def main() -> None:
    """SignWriting toolkit: catalog, SWML, corpus, prediction, recognition."""


# --- catalog ---


@main.group()
def catalog() -> None:
    """Inspect and validate glyph catalogs."""


@catalog.command("validate")
@click.argument("manifest", type=click.Path(path_type=Path, exists=False))
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def catalog_validate(manifest: Path, as_json: bool) -> None:
    cat = load_catalog(manifest)
    payload = {
        "version": cat.version,
        "glyph_count": cat.glyph_count,
        "categories": cat.categories(),
        "regions": [r.name for r in regions_for_puppet(cat)],
    }
    if as_json:
        _echo_json(payload)
    else:
        click.echo(
            f"ok: {cat.glyph_count} glyphs, categories {payload['categories']}, "
            f"version {cat.version!r}"
        )


@catalog.command("search")
@manifest_option
@click.option("--region", default=None, help="Anatomic region / aspect to search.")
@click.option("--scope", default=None, help="Category or CC-GG scope filter.")
@click.option("--attr", "attrs", multiple=True, help="attribute=option filter (repeatable).")
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def catalog_search(manifest, region, scope, attrs, as_json) -> None:
    cat = _catalog(manifest)
    if region is not None:
        state = {}
        for pair in attrs:
            if "=" not in pair:
                raise click.UsageError(f"--attr expects key=value, got {pair!r}")
            key, value = pair.split("=", 1)
            state[key] = value
        descs = filter_glyphs(cat, region, state)
    elif scope is not None:
        parts = scope.split("-")
        parsed = (int(parts[0]), int(parts[1])) if len(parts) == 2 else int(parts[0])
        descs = glyphs_in(cat, parsed)
    else:
        raise click.UsageError("provide --region or --scope")
    if as_json:
        _echo_json({"glyphs": [{"code": d.id.code(), "name": d.name} for d in descs]})
    else:
        for d in descs:
            click.echo(f"{d.id.code()}  {d.name}")


@catalog.command("regions")
@manifest_option
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def catalog_regions(manifest, as_json) -> None:
    cat = _catalog(manifest)
    regions = regions_for_puppet(cat)
    if as_json:
        _echo_json(
            {
                "regions": [
                    {
                        "name": r.name,
                        "kind": r.kind,
                        "boxes": [b.attribute for b in choice_boxes_for(cat, r)],
                    }
                    for r in regions
                ]
            }
        )
    else:
        for r in regions:
            boxes = ", ".join(b.attribute for b in choice_boxes_for(cat, r))
            click.echo(f"{r.name} ({r.kind}): {boxes}")


# --- swml ---


@main.group()
def swml() -> None:
    """Validate and canonicalize SWML documents."""


@swml.command("validate")
@click.argument("file", type=click.Path(path_type=Path))
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def swml_validate(file: Path, as_json: bool) -> None:
    doc = parse_swml(file.read_bytes())
    doc.validate()
    payload = {
        "columns": len(doc.columns),
        "signs": len(doc.signs()),
        "glyphs": sum(len(s.placements) for s in doc.signs()),
    }
    if as_json:
        _echo_json(payload)
    else:
        click.echo(f"ok: {payload['signs']} signs in {payload['columns']} columns")


@swml.command("canonicalize")
@click.argument("file", type=click.Path(path_type=Path))
@click.option("-o", "--output", type=click.Path(path_type=Path), default=None)
@handle_errors
def swml_canonicalize(file: Path, output: Path | None) -> None:
    data = serialize_swml(parse_swml(file.read_bytes()))
    if output is None:
        sys.stdout.buffer.write(data)
    else:
        output.write_bytes(data)


# --- corpus ---


@main.group()
def corpus() -> None:
    """Structured corpus: ingestion, statistics, pattern mining."""


store_option = click.option(
    "--store", required=True, type=click.Path(path_type=Path), help="Corpus file."
)


@corpus.command("ingest")
@click.argument("files", nargs=-1, required=True, type=click.Path(path_type=Path))
@store_option
@manifest_option
@click.option("--provenance", default="editor",
              type=click.Choice(["editor", "ogr", "import"]))
@handle_errors
def corpus_ingest(files, store, manifest, provenance) -> None:
    cat = _catalog(manifest)
    cs = CorpusStore.load(store, cat) if store.exists() else CorpusStore(cat)
    total = 0
    for file in files:
        doc = parse_swml(Path(file).read_bytes())
        total += len(cs.ingest(doc, provenance))
    cs.save(store)
    click.echo(f"ingested {total} signs; store now {len(cs)} entries "
               f"({cs.total_signs} weighted)")


@corpus.command("stats")
@store_option
@manifest_option
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def corpus_stats(store, manifest, as_json) -> None:
    cs = CorpusStore.load(store, _catalog(manifest))
    freq = {g.code(): n for g, n in sorted(stats_frequency(cs).items())}
    if as_json:
        _echo_json({"total_signs": cs.total_signs, "frequency": freq})
    else:
        for code, n in freq.items():
            click.echo(f"{code}  {n}")
        click.echo(f"total signs: {cs.total_signs}")


@corpus.command("patterns")
@store_option
@manifest_option
@click.option("--min-support", default=2, show_default=True, type=int)
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def corpus_patterns(store, manifest, min_support, as_json) -> None:
    cs = CorpusStore.load(store, _catalog(manifest))
    report = pattern_report(cs, min_support)
    rows = [
        {"glyphs": sorted(g.code() for g in itemset), "support": support}
        for itemset, support in report
    ]
    if as_json:
        _echo_json({"patterns": rows})
    else:
        for row in rows:
            click.echo(f"{row['support']:4d}  {' '.join(row['glyphs'])}")


@corpus.command("build-model")
@store_option
@manifest_option
@click.option("-o", "--output", required=True, type=click.Path(path_type=Path))
@click.option("--granularity", default="base", type=click.Choice(["base", "full"]),
              show_default=True)
@handle_errors
def corpus_build_model(store, manifest, output, granularity) -> None:
    cs = CorpusStore.load(store, _catalog(manifest))
    model = build_model(cs, granularity)
    persist_model(model, output)
    click.echo(
        f"model: {model.total_signs} signs, {len(model.contains)} glyph keys, "
        f"{len(model.joint)} pairs -> {output}"
    )


# --- predict ---


@main.command("predict")
@click.option("--placed", default="", help="Comma-separated glyph codes already placed.")
@click.option("--model", "model_path", required=True, type=click.Path(path_type=Path))
@click.option("-k", default=DEFAULT_K, show_default=True, type=int)
@click.option("--json", "as_json", is_flag=True)
@handle_errors
def predict_cmd(placed, model_path, k, as_json) -> None:
    model = load_model(model_path)
    placed_ids = {parse_glyph_id(c.strip()) for c in placed.split(",") if c.strip()}
    suggestions = suggest(placed_ids, model, k)
    if as_json:
        sys.stdout.buffer.write(suggestions_to_json(suggestions) + b"\n")
    else:
        for s in suggestions:
            click.echo(f"{s.glyph.code()}  {str(s.score):>8}  {s.tier}")


# --- ogr ---


@main.group()
def ogr() -> None:
    """Optical glyph recognition: render, recognize, review."""


config_option = click.option(
    "--config", "config_path", default=None, type=click.Path(path_type=Path),
    help="Recognizer config JSON (threshold and grouping overrides).",
)


@ogr.command("recognize")
@click.argument("image", type=click.Path(path_type=Path))
@manifest_option
@config_option
@click.option("-o", "--outdir", type=click.Path(path_type=Path), default=None,
              help="Output directory (defaults to the image's directory).")
@click.option("--overlay", is_flag=True, help="Also write an overlay PNG.")
@handle_errors
def ogr_recognize(image, manifest, config_path, outdir, overlay) -> None:
    from .ogr import (
        RecognizerConfig,
        apply_review,
        draw_overlay,
        recognize,
        report_bytes,
    )
    from .ogr.raster import RasterPage

    cat = _catalog(manifest)
    config = RecognizerConfig.from_file(config_path) if config_path else RecognizerConfig()
    page = RasterPage.load(image)
    result = recognize(page, cat, config)
    outdir = outdir or image.parent
    outdir.mkdir(parents=True, exist_ok=True)
    stem = image.stem
    (outdir / f"{stem}.report.json").write_bytes(report_bytes(result))
    outcome = apply_review(result, [], cat)
    (outdir / f"{stem}.swml").write_bytes(serialize_swml(outcome.document))
    if overlay:
        draw_overlay(page, result).save(outdir / f"{stem}.overlay.png")
    for warning in outcome.warnings:
        click.echo(f"warning: {warning}", err=True)
    click.echo(
        f"recognized {len(result.recognized)} glyphs in {len(result.signs)} signs; "
        f"{len(result.unresolved)} unresolved -> {outdir / (stem + '.swml')}"
    )


@ogr.command("render")
@click.argument("swml_file", type=click.Path(path_type=Path))
@manifest_option
@click.option("-o", "--output", required=True, type=click.Path(path_type=Path))
@click.option("--spacing", default=48, show_default=True, type=int)
@click.option("--noise-sigma", default=0.0, show_default=True, type=float)
@click.option("--jitter-deg", default=0.0, show_default=True, type=float)
@click.option("--seed", default=0, show_default=True, type=int)
@handle_errors
def ogr_render(swml_file, manifest, output, spacing, noise_sigma, jitter_deg, seed) -> None:
    from .ogr import render_document

    cat = _catalog(manifest)
    doc = parse_swml(swml_file.read_bytes())
    page, truth = render_document(
        doc, cat, spacing=spacing, noise_sigma=noise_sigma,
        jitter_deg=jitter_deg, seed=seed,
    )
    page.save(output)
    click.echo(f"rendered {len(truth)} glyphs onto {page.width}x{page.height} -> {output}")


@ogr.command("review")
@click.argument("report", type=click.Path(path_type=Path))
@click.argument("edits", type=click.Path(path_type=Path))
@manifest_option
@click.option("-o", "--output", required=True, type=click.Path(path_type=Path))
@handle_errors
def ogr_review(report, edits, manifest, output) -> None:
    from .ogr import ReviewEdit, apply_review, report_to_result

    cat = _catalog(manifest)
    result = report_to_result(json.loads(report.read_text(encoding="utf-8")))
    edit_list = [
        ReviewEdit.from_dict(e) for e in json.loads(edits.read_text(encoding="utf-8"))
    ]
    outcome = apply_review(result, edit_list, cat)
    output.write_bytes(serialize_swml(outcome.document))
    for warning in outcome.warnings:
        click.echo(f"warning: {warning}", err=True)
    click.echo(f"finalized {len(outcome.document.signs())} signs -> {output}")


# --- serve ---


@main.command("serve")
@manifest_option
@click.option("--storage", default="swkit-storage", show_default=True,
              type=click.Path(path_type=Path))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8772, show_default=True, type=int)
@click.option("--predict-k", default=DEFAULT_K, show_default=True, type=int)
@click.option("--ui-dir", default=None, type=click.Path(path_type=Path),
              help="Static editor build to mount at /ui.")
@config_option
@handle_errors
def serve_cmd(manifest, storage, host, port, predict_k, ui_dir, config_path) -> None:
    from .ogr import RecognizerConfig
    from .service import ServiceConfig, serve

    ogr_config = RecognizerConfig.from_file(config_path) if config_path else RecognizerConfig()
    config = ServiceConfig(
        catalog_path=manifest or shipped_manifest_path(),
        storage_dir=storage,
        predict_k=predict_k,
        ogr=ogr_config,
        ui_dir=ui_dir,
    )
    serve(config, host=host, port=port)


if __name__ == "__main__":
    main()
