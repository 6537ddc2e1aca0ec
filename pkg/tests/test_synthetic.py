"""Synthetic generator: determinism, ground truth, corpus layout."""

import csv

import numpy as np
import pytest

from platetrace import synthetic


def test_plate_render_geometry_and_ink():
    plate = synthetic.render_plate("TN23AL0322", 60, 240)
    assert plate.shape == (60, 240)
    assert plate.min() == 0.0  # ink is exactly black
    assert (plate == 0.0).sum() > 500


def test_plate_text_validation():
    with pytest.raises(ValueError):
        synthetic.render_plate("bad text!", 60, 240)
    with pytest.raises(ValueError):
        synthetic.render_plate("", 60, 240)


def test_random_plate_text_shape():
    rng = np.random.default_rng(51)
    for _ in range(20):
        text = synthetic.random_plate_text(rng)
        assert len(text) == 10
        assert text[:2].isalpha() and text[4:6].isalpha()
        assert text[2:4].isdigit() and text[6:].isdigit()


def test_frame_truth_box_inside_frame():
    rng = np.random.default_rng(52)
    for _ in range(5):
        frame, truth = synthetic.render_frame(rng)
        x, y, w, h = truth.plate_box
        assert frame.shape == (synthetic.FRAME_H, synthetic.FRAME_W)
        assert 0 <= x and x + w <= frame.shape[1]
        assert 0 <= y and y + h <= frame.shape[0]
        assert frame.min() >= 0.0 and frame.max() <= 1.0


def test_frames_deterministic_per_seed():
    a, ta = synthetic.render_frame(np.random.default_rng(53))
    b, tb = synthetic.render_frame(np.random.default_rng(53))
    assert np.array_equal(a, b)
    assert ta == tb


def test_corpus_written_with_manifest(tmp_path):
    manifest = synthetic.write_corpus(tmp_path, count=4, seed=9)
    rows = list(csv.reader(open(manifest)))
    assert len(rows) == 4
    for rel, text, x, y, w, h in rows:
        assert (tmp_path / rel).is_file()
        assert text.isalnum() and len(text) == 10
        assert int(w) > 0 and int(h) > 0
