"""CLI driver: single runs, corpus evaluation, corpus generation."""

import csv
import json

import numpy as np
import pytest

from platetrace import cli, imgio, synthetic
from platetrace.cli import parse_param_overrides


@pytest.fixture(scope="module")
def small_corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    manifest = synthetic.write_corpus(out, count=3, seed=5)
    return out, manifest


class TestParamOverrides:
    def test_routes_to_both_dataclasses(self):
        ext, seg = parse_param_overrides(["box_size=16", "min_char_area=900", "diff_threshold=0.05"])
        assert ext.box_size == 16
        assert ext.diff_threshold == 0.05
        assert seg.min_char_area == 900
        assert seg.max_char_area == 8000  # untouched default

    def test_unknown_key_exits(self):
        with pytest.raises(SystemExit):
            parse_param_overrides(["nope=1"])

    def test_malformed_pair_exits(self):
        with pytest.raises(SystemExit):
            parse_param_overrides(["justakey"])


class TestRun:
    def make_frame_png(self, tmp_path, text="KA05MX4455"):
        rng = np.random.default_rng(71)
        frame, truth = synthetic.render_frame(
            rng, text=text, scale=0.15, ramp_amp=0.1, noise_frac=0.002
        )
        path = tmp_path / "frame.png"
        imgio.write_png_gray(path, frame)
        return path, truth

    def test_appends_recognized_plate(self, tmp_path, capsys):
        image, truth = self.make_frame_png(tmp_path)
        out = tmp_path / "plates.txt"
        report = tmp_path / "report.json"
        code = cli.main(["run", str(image), "--out", str(out), "--report", str(report)])
        assert code == 0
        assert out.read_text() == truth.text + "\n"
        payload = json.loads(report.read_text())
        assert payload["images"][0]["recognized"] == truth.text
        assert payload["images"][0]["glyph_count"] == 10
        assert payload["totals"]["processed"] == 1

    def test_blank_frame_is_stage_failure_not_crash(self, tmp_path):
        path = tmp_path / "blank.png"
        imgio.write_png_gray(path, np.full((240, 320), 0.4))
        out = tmp_path / "plates.txt"
        report = tmp_path / "report.json"
        code = cli.main(["run", str(path), "--out", str(out), "--report", str(report)])
        assert code == 0
        assert not out.exists()
        payload = json.loads(report.read_text())
        assert payload["images"][0]["failure"] == "extraction"
        assert payload["totals"]["counts"]["extraction"] == 0

    def test_unreadable_path_exits_2(self, tmp_path, capsys):
        code = cli.main(["run", str(tmp_path / "missing.png")])
        assert code == 2
        assert "missing.png" in capsys.readouterr().err

    def test_debug_dir_dumps(self, tmp_path):
        image, _ = self.make_frame_png(tmp_path)
        debug = tmp_path / "debug"
        code = cli.main(["run", str(image), "--out", str(tmp_path / "o.txt"), "--debug-dir", str(debug)])
        assert code == 0
        assert (debug / "02_binary.pgm").is_file()
        assert (debug / "normalized.pgm").is_file()


class TestCorpus:
    def test_summary_and_report(self, small_corpus, tmp_path, capsys):
        _, manifest = small_corpus
        report = tmp_path / "r.json"
        code = cli.main(["corpus", str(manifest), "--report", str(report)])
        assert code == 0
        out = capsys.readouterr().out
        assert "Extraction" in out and "3/3" in out
        payload = json.loads(report.read_text())
        assert payload["totals"]["processed"] == 3
        assert payload["totals"]["counts"]["recognition"] >= 2
        for img in payload["images"]:
            assert img["iou"] is None or img["iou"] >= 0.5

    def test_malformed_rows_skipped_with_warning(self, small_corpus, tmp_path, capsys):
        corpus_dir, manifest = small_corpus
        rows = list(csv.reader(open(manifest)))
        bad = tmp_path / "bad.csv"
        with open(bad, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(rows[0])
            writer.writerow(["frames/x.png", "AA00AA0000", "1", "2", "3"])  # 5 cols
            writer.writerow(["frames/y.png", "BB11BB1111", "a", "b", "c", "d"])  # bad bbox
            writer.writerow(["", ""])  # blank row: ignored, not counted
        # manifest paths resolve relative to the manifest's own directory
        import shutil

        shutil.copytree(corpus_dir / "frames", tmp_path / "frames")
        report = tmp_path / "r.json"
        code = cli.main(["corpus", str(bad), "--report", str(report)])
        assert code == 0
        err = capsys.readouterr().err
        assert "skipped" in err
        payload = json.loads(report.read_text())
        assert payload["totals"]["processed"] == 1
        assert payload["totals"]["skipped_rows"] == 2

    def test_empty_manifest_reports_no_data(self, tmp_path, capsys):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        code = cli.main(["corpus", str(empty)])
        assert code == 0
        out = capsys.readouterr().out
        assert "0/0" in out
        assert "no data" in out

    def test_missing_manifest_exits_2(self, tmp_path):
        assert cli.main(["corpus", str(tmp_path / "nope.csv")]) == 2

    def test_parallel_jobs_match_serial(self, small_corpus, tmp_path):
        _, manifest = small_corpus
        r1 = tmp_path / "serial.json"
        r2 = tmp_path / "parallel.json"
        assert cli.main(["corpus", str(manifest), "--report", str(r1)]) == 0
        assert cli.main(["corpus", str(manifest), "--report", str(r2), "--jobs", "3"]) == 0
        a = json.loads(r1.read_text())
        b = json.loads(r2.read_text())
        strip = lambda p: [
            {k: v for k, v in img.items() if k != "timings_ms"} for img in p["images"]
        ]
        assert strip(a) == strip(b)


class TestGenCorpus:
    def test_writes_frames_and_manifest(self, tmp_path, capsys):
        code = cli.main(["gen-corpus", "--count", "2", "--seed", "3", "--out", str(tmp_path)])
        assert code == 0
        manifest = capsys.readouterr().out.strip()
        rows = list(csv.reader(open(manifest)))
        assert len(rows) == 2
        assert (tmp_path / rows[0][0]).is_file()

    def test_deterministic_per_seed(self, tmp_path):
        cli.main(["gen-corpus", "--count", "2", "--seed", "9", "--out", str(tmp_path / "a")])
        cli.main(["gen-corpus", "--count", "2", "--seed", "9", "--out", str(tmp_path / "b")])
        ra = (tmp_path / "a" / "manifest.csv").read_text()
        rb = (tmp_path / "b" / "manifest.csv").read_text()
        assert ra == rb
        fa = (tmp_path / "a" / "frames" / "frame_000.png").read_bytes()
        fb = (tmp_path / "b" / "frames" / "frame_000.png").read_bytes()
        assert fa == fb
