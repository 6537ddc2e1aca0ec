"""Segmentation: normalization, debris filtering, glyph ordering, no-deformity."""

import numpy as np
import pytest

from platetrace import extraction, segmentation, synthetic
from platetrace.extraction import ExtractedPlate
from platetrace.segmentation import (
    EmptyPlate,
    NoCharacters,
    SegmentationParams,
    filter_debris,
    normalize_plate,
    segment_characters,
)


def make_plate(gray):
    gray = np.asarray(gray, dtype=np.float64)
    mask = np.ones(gray.shape, dtype=np.uint8)
    h, w = gray.shape
    return ExtractedPlate(bbox=(0, 0, w - 1, h - 1), gray=gray, mask=mask)


def synthetic_plate(text="KA05MX4455", h=60, w=240, seed=33, **frame_kw):
    rng = np.random.default_rng(seed)
    frame, truth = synthetic.render_frame(
        rng,
        text=text,
        scale=h / 480,
        aspect=w / h,
        ramp_amp=frame_kw.pop("ramp_amp", 0.0),
        noise_frac=frame_kw.pop("noise_frac", 0.0),
        frame_w=640,
        frame_h=480,
        **frame_kw,
    )
    return extraction.extract_plate(frame), truth


class TestNormalizePlate:
    def test_output_dims_are_fixed(self):
        plate, _ = synthetic_plate()
        norm = normalize_plate(plate)
        assert norm.shape == (175, 730)
        assert set(np.unique(norm).tolist()) <= {0, 1}

    def test_polarity_ink_becomes_one(self):
        gray = np.full((40, 160), 0.9)
        gray[10:30, 20:30] = 0.0  # one dark bar glyph
        norm = normalize_plate(make_plate(gray))
        assert norm.sum() > 0
        # ink region maps to 1, bright body to 0
        ys, xs = np.nonzero(norm)
        assert xs.max() < 730 * 40 / 160  # all ink in the left quarter

    def test_dark_plate_frame_is_removed(self):
        plate, _ = synthetic_plate()
        gray = plate.gray.copy()
        gray[:2, :] = 0.0
        gray[-2:, :] = 0.0
        gray[:, :2] = 0.0
        gray[:, -2:] = 0.0
        glyphs = segment_characters(make_plate(gray))
        # the 2 px frame contributes no component; only the 10 glyphs remain
        assert len(glyphs) == 10

    def test_empty_plate_raises(self):
        gray = np.zeros((30, 120))
        with pytest.raises(EmptyPlate):
            normalize_plate(make_plate(gray))


class TestFilterDebris:
    def rect(self, h, w, y, x, canvas=None):
        out = canvas if canvas is not None else np.zeros((175, 730), dtype=np.uint8)
        out[y : y + h, x : x + w] = 1
        return out

    def test_small_blob_removed(self):
        norm = self.rect(15, 20, 50, 100)  # 300 px screw hole
        assert np.all(filter_debris(norm) == 0)

    def test_large_smear_removed(self):
        norm = self.rect(90, 100, 40, 100)  # 9000 px
        assert np.all(filter_debris(norm) == 0)

    def test_exact_boundaries_kept(self):
        norm = self.rect(25, 40, 20, 50)  # exactly 1000
        norm = self.rect(80, 100, 60, 300, canvas=norm)  # exactly 8000
        out = filter_debris(norm)
        assert np.array_equal(out, norm)

    def test_one_below_and_above_removed(self):
        norm = self.rect(27, 37, 20, 50)  # 999
        norm = self.rect(89, 90, 60, 300, canvas=norm)  # 8010
        assert np.all(filter_debris(norm) == 0)

    def test_in_band_kept_alongside_debris(self):
        norm = self.rect(40, 60, 40, 100)  # 2400, kept
        norm = self.rect(10, 10, 40, 400, canvas=norm)  # 100, debris
        out = filter_debris(norm)
        assert out[40:80, 100:160].all()
        assert not out[40:50, 400:410].any()


class TestSegmentCharacters:
    def test_ten_glyphs_in_reading_order(self):
        plate, truth = synthetic_plate("TN23AL0322")
        glyphs = segment_characters(plate)
        assert len(glyphs) == len(truth.text) == 10
        xs = [g.bbox[0] for g in glyphs]
        assert xs == sorted(xs)
        assert [g.order_index for g in glyphs] == list(range(10))

    def test_screw_hole_blob_ignored(self):
        plate, _ = synthetic_plate()
        baseline = segment_characters(plate)
        gray = plate.gray.copy()
        # dark disc ~ r=4 px at source scale -> ~400 px after normalization
        yy, xx = np.mgrid[0 : gray.shape[0], 0 : gray.shape[1]]
        disc = (yy - 5) ** 2 + (xx - gray.shape[1] // 2) ** 2 <= 16
        gray[disc] = 0.0
        glyphs = segment_characters(make_plate(gray))
        assert len(glyphs) == len(baseline)

    def test_no_deformity_bitmaps_are_exact_subrasters(self):
        plate, _ = synthetic_plate()
        p = SegmentationParams()
        cleaned = filter_debris(normalize_plate(plate, p), p)
        for g in segment_characters(plate, p):
            x0, y0, x1, y1 = g.bbox
            assert np.array_equal(g.bitmap, cleaned[y0 : y1 + 1, x0 : x1 + 1])
            assert p.min_char_area <= int(g.bitmap.sum()) <= p.max_char_area

    def test_border_touching_artifacts_only_raises(self):
        gray = np.full((40, 160), 0.9)
        gray[0:12, 0:30] = 0.0  # dark smudge pinned to the corner
        with pytest.raises(NoCharacters):
            segment_characters(make_plate(gray))

    def test_deterministic(self):
        plate, _ = synthetic_plate()
        a = segment_characters(plate)
        b = segment_characters(plate)
        assert len(a) == len(b)
        for ga, gb in zip(a, b):
            assert ga.bbox == gb.bbox
            assert np.array_equal(ga.bitmap, gb.bitmap)

    def test_debug_dump(self, tmp_path):
        plate, _ = synthetic_plate()
        segment_characters(plate, debug_dir=tmp_path)
        names = {f.name for f in tmp_path.iterdir()}
        assert "normalized.pgm" in names
        assert "cleaned.pgm" in names
        assert "glyph_00.pgm" in names


class TestParams:
    def test_area_band_validation(self):
        with pytest.raises(ValueError):
            SegmentationParams(min_char_area=5000, max_char_area=100)
