"""Command-line driver: frames in, plate strings and reports out.

Subcommands: `run` (one image), `corpus` (manifest evaluation in the
three-stage accuracy format), `gen-corpus` (synthetic frames with ground
truth), `serve` (tracking service), `ingest` (watch-file poller).
Pipeline failures on an image are recorded as data, not process errors;
only I/O problems produce a nonzero exit.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import imgio, synthetic, watchfile
from .extraction import ExtractionParams, NoPlateFound, extract_plate
from .ocr import EmptyGlyph, default_templates, load_templates, recognize_plate
from .segmentation import EmptyPlate, NoCharacters, SegmentationParams, segment_characters


@dataclass
class ImageOutcome:
    path: str
    extraction_ok: bool = False
    segmentation_ok: bool = False
    recognition_ok: bool = False
    glyph_count: int = 0
    recognized: str | None = None
    expected: str | None = None
    failure: str | None = None
    bbox: tuple[int, int, int, int] | None = None
    iou: float | None = None
    timings_ms: dict = field(default_factory=dict)


@dataclass
class RunReport:
    images: list[ImageOutcome] = field(default_factory=list)
    skipped_rows: int = 0

    @property
    def total(self) -> int:
        return len(self.images)

    def counts(self) -> dict:
        return {
            "extraction": sum(i.extraction_ok for i in self.images),
            "segmentation": sum(i.segmentation_ok for i in self.images),
            "recognition": sum(i.recognition_ok for i in self.images),
        }

    def rates(self) -> dict:
        n = self.total
        return {k: (v / n if n else 0.0) for k, v in self.counts().items()}


def parse_param_overrides(pairs: list[str]) -> tuple[ExtractionParams, SegmentationParams]:
    """Split `k=v` strings across the two parameter dataclasses by field name."""
    ext_fields = {f.name: f.type for f in dataclasses.fields(ExtractionParams)}
    seg_fields = {f.name: f.type for f in dataclasses.fields(SegmentationParams)}
    ext_kw: dict = {}
    seg_kw: dict = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise SystemExit(f"--param needs k=v, got {pair!r}")
        key, _, value = pair.partition("=")
        if key in ext_fields:
            ext_kw[key] = type(getattr(ExtractionParams(), key))(value)
        elif key in seg_fields:
            seg_kw[key] = type(getattr(SegmentationParams(), key))(value)
        else:
            known = ", ".join(sorted(ext_fields | seg_fields))
            raise SystemExit(f"unknown --param key {key!r} (known: {known})")
    return ExtractionParams(**ext_kw), SegmentationParams(**seg_kw)


def _iou(box_a: tuple[int, int, int, int], box_b: tuple[int, int, int, int]) -> float:
    """IoU of two inclusive (x0, y0, x1, y1) boxes."""
    ax0, ay0, ax1, ay1 = box_a
    bx0, by0, bx1, by1 = box_b
    iw = min(ax1, bx1) - max(ax0, bx0) + 1
    ih = min(ay1, by1) - max(ay0, by0) + 1
    inter = max(0, iw) * max(0, ih)
    union = (ax1 - ax0 + 1) * (ay1 - ay0 + 1) + (bx1 - bx0 + 1) * (by1 - by0 + 1) - inter
    return inter / union


def process_image(
    gray,
    ext_params: ExtractionParams,
    seg_params: SegmentationParams,
    templates,
    path: str = "<memory>",
    debug_dir: str | None = None,
) -> ImageOutcome:
    """Run the three pipeline stages, downgrading pipeline errors to outcomes."""
    outcome = ImageOutcome(path=str(path))
    t0 = time.perf_counter()
    try:
        plate = extract_plate(gray, ext_params, debug_dir=debug_dir)
    except NoPlateFound:
        outcome.failure = "extraction"
        outcome.timings_ms["extraction"] = (time.perf_counter() - t0) * 1000
        return outcome
    outcome.extraction_ok = True
    outcome.bbox = plate.bbox
    outcome.timings_ms["extraction"] = (time.perf_counter() - t0) * 1000

    t1 = time.perf_counter()
    try:
        glyphs = segment_characters(plate, seg_params, debug_dir=debug_dir)
    except (EmptyPlate, NoCharacters):
        outcome.failure = "segmentation"
        outcome.timings_ms["segmentation"] = (time.perf_counter() - t1) * 1000
        return outcome
    outcome.glyph_count = len(glyphs)
    outcome.timings_ms["segmentation"] = (time.perf_counter() - t1) * 1000

    t2 = time.perf_counter()
    try:
        text, _ = recognize_plate(glyphs, templates)
    except EmptyGlyph:
        outcome.failure = "recognition"
        outcome.timings_ms["recognition"] = (time.perf_counter() - t2) * 1000
        return outcome
    outcome.recognized = text
    outcome.timings_ms["recognition"] = (time.perf_counter() - t2) * 1000
    return outcome


def _load_templates_arg(template_dir: str | None):
    return load_templates(template_dir) if template_dir else default_templates()


def _write_report(report: RunReport, path: str | None) -> None:
    if not path:
        return
    payload = {
        "images": [dataclasses.asdict(i) for i in report.images],
        "totals": {
            "processed": report.total,
            "skipped_rows": report.skipped_rows,
            "counts": report.counts(),
            "rates": report.rates(),
        },
    }
    Path(path).write_text(json.dumps(payload, indent=2))


def cmd_run(args) -> int:
    try:
        gray = imgio.read_gray(args.image)
    except (FileNotFoundError, imgio.ImageFormatError) as exc:
        print(f"error: cannot read {args.image}: {exc}", file=sys.stderr)
        return 2
    ext_params, seg_params = parse_param_overrides(args.param)
    templates = _load_templates_arg(args.templates)
    outcome = process_image(
        gray, ext_params, seg_params, templates, path=args.image, debug_dir=args.debug_dir
    )
    report = RunReport(images=[outcome])
    if outcome.recognized is not None:
        watchfile.append_line(args.out, outcome.recognized)
        print(outcome.recognized)
    else:
        print(f"{args.image}: {outcome.failure} failed", file=sys.stderr)
    _write_report(report, args.report)
    return 0


def _read_manifest(manifest_path: Path) -> tuple[list[dict], int]:
    rows = []
    skipped = 0
    with open(manifest_path, newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                entry = {"path": row[0].strip(), "expected": row[1].strip().upper()}
                if not entry["path"] or not entry["expected"]:
                    raise ValueError("empty path or plate")
                if len(row) >= 6:
                    x, y, w, h = (int(v) for v in row[2:6])
                    if w <= 0 or h <= 0:
                        raise ValueError("non-positive bbox")
                    entry["bbox"] = (x, y, x + w - 1, y + h - 1)
                elif len(row) != 2:
                    raise ValueError(f"expected 2 or 6 columns, got {len(row)}")
                rows.append(entry)
            except ValueError as exc:
                print(f"warning: manifest line {lineno} skipped: {exc}", file=sys.stderr)
                skipped += 1
    return rows, skipped


def evaluate_corpus(
    manifest_path: str | Path,
    ext_params: ExtractionParams | None = None,
    seg_params: SegmentationParams | None = None,
    templates=None,
    out_file: str | None = None,
    jobs: int = 1,
    iou_gate: float = 0.5,
) -> RunReport:
    manifest_path = Path(manifest_path)
    ext_params = ext_params or ExtractionParams()
    seg_params = seg_params or SegmentationParams()
    templates = templates or default_templates()
    rows, skipped = _read_manifest(manifest_path)
    report = RunReport(skipped_rows=skipped)
    append_lock = threading.Lock()

    def run_row(entry: dict) -> ImageOutcome:
        image_path = manifest_path.parent / entry["path"]
        gray = imgio.read_gray(image_path)
        outcome = process_image(gray, ext_params, seg_params, templates, path=entry["path"])
        outcome.expected = entry["expected"]
        if outcome.extraction_ok and "bbox" in entry:
            outcome.iou = _iou(outcome.bbox, entry["bbox"])
            outcome.extraction_ok = outcome.iou >= iou_gate
        outcome.segmentation_ok = (
            outcome.extraction_ok and outcome.glyph_count == len(entry["expected"])
        )
        outcome.recognition_ok = outcome.recognized == entry["expected"]
        if outcome.recognized is not None and out_file:
            with append_lock:
                watchfile.append_line(out_file, outcome.recognized)
        return outcome

    if jobs <= 1:
        report.images = [run_row(e) for e in rows]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            report.images = list(pool.map(run_row, rows))
    return report


def format_corpus_summary(report: RunReport) -> str:
    lines = [f"{'Units':<14}{'Number of accuracy':<22}Percentage of accuracy"]
    counts = report.counts()
    n = report.total
    for stage in ("extraction", "segmentation", "recognition"):
        k = counts[stage]
        pct = f"{100.0 * k / n:.3f}%" if n else "no data"
        lines.append(f"{stage.capitalize():<14}{f'{k}/{n}':<22}{pct}")
    if report.skipped_rows:
        lines.append(f"(skipped {report.skipped_rows} malformed manifest rows)")
    return "\n".join(lines)


def cmd_corpus(args) -> int:
    manifest = Path(args.manifest)
    if not manifest.is_file():
        print(f"error: manifest not found: {manifest}", file=sys.stderr)
        return 2
    ext_params, seg_params = parse_param_overrides(args.param)
    templates = _load_templates_arg(args.templates)
    try:
        report = evaluate_corpus(
            manifest,
            ext_params,
            seg_params,
            templates,
            out_file=args.out,
            jobs=args.jobs,
        )
    except (FileNotFoundError, imgio.ImageFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(format_corpus_summary(report))
    _write_report(report, args.report)
    return 0


def cmd_gen_corpus(args) -> int:
    manifest = synthetic.write_corpus(args.out, count=args.count, seed=args.seed)
    print(manifest)
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app

    app = create_app(
        journal_path=args.journal,
        outbox_path=args.outbox,
        geo_map_path=args.geo_map,
        timezone_name=args.tz,
        auth_token=args.token,
        ui_dir=args.ui_dir,
    )
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def cmd_ingest(args) -> int:
    from .ingest import IngestConfig, Ingester, load_config_file

    if args.config:
        cfg = load_config_file(args.config)
    else:
        if not args.endpoint:
            print("error: --endpoint or --config required", file=sys.stderr)
            return 2
        cfg = IngestConfig(
            watch_path=args.watch,
            interval=args.interval,
            endpoint=args.endpoint,
            camera_id=args.camera_id,
            retry_max=args.retry_max,
            auth_token=args.token,
        )
    Ingester(cfg).run_loop()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="plate", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default="plates.txt", help="recognized-plates text file")
    common.add_argument("--templates", default=None, help="template directory (default: bundled)")
    common.add_argument("--param", action="append", default=[], metavar="K=V",
                        help="override an extraction/segmentation parameter")
    common.add_argument("--report", default=None, help="write a JSON run report")

    p_run = sub.add_parser("run", parents=[common], help="recognize one image")
    p_run.add_argument("image")
    p_run.add_argument("--debug-dir", default=None, help="dump stage rasters as PGM")
    p_run.set_defaults(func=cmd_run)

    p_corpus = sub.add_parser("corpus", parents=[common], help="evaluate a manifest")
    p_corpus.add_argument("manifest")
    p_corpus.add_argument("--jobs", type=int, default=1)
    p_corpus.set_defaults(func=cmd_corpus, out=None)

    p_gen = sub.add_parser("gen-corpus", help="generate a synthetic corpus")
    p_gen.add_argument("--count", type=int, default=95)
    p_gen.add_argument("--seed", type=int, default=1)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_gen_corpus)

    p_serve = sub.add_parser("serve", help="run the tracking service")
    p_serve.add_argument("--journal", default="tracking.journal")
    p_serve.add_argument("--outbox", default="alerts.outbox")
    p_serve.add_argument("--geo-map", default=None, help="camera_id=lat,lon,label lines")
    p_serve.add_argument("--tz", default="UTC")
    p_serve.add_argument("--token", default=None)
    p_serve.add_argument("--ui-dir", default=None, help="static frontend served at /ui")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8020)
    p_serve.set_defaults(func=cmd_serve)

    p_ing = sub.add_parser("ingest", help="poll the watch file into the service")
    p_ing.add_argument("--config", default=None, help="key=value config file")
    p_ing.add_argument("--watch", default="plates.txt")
    p_ing.add_argument("--interval", type=float, default=10.0)
    p_ing.add_argument("--endpoint", default=None, help="service base URL")
    p_ing.add_argument("--camera-id", default="cam-0")
    p_ing.add_argument("--retry-max", type=int, default=3)
    p_ing.add_argument("--token", default=None)
    p_ing.set_defaults(func=cmd_ingest)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
