"""Imaging primitive contracts: worked examples plus oracle agreement."""

import numpy as np
import pytest

import oracles
from platetrace import imaging


def rand_gray(rng, h=16, w=16):
    return rng.random((h, w))


def rand_binary(rng, h=16, w=16, p=0.5):
    return (rng.random((h, w)) < p).astype(np.uint8)


class TestToGrayscale:
    def test_black(self):
        rgb = np.zeros((4, 5, 3), dtype=np.uint8)
        assert np.all(imaging.to_grayscale(rgb) == 0.0)

    def test_white_is_exactly_one(self):
        rgb = np.full((3, 3, 3), 255, dtype=np.uint8)
        assert np.all(imaging.to_grayscale(rgb) == 1.0)

    def test_pure_red(self):
        rgb = np.zeros((2, 2, 3), dtype=np.uint8)
        rgb[:, :, 0] = 255
        assert np.all(imaging.to_grayscale(rgb) == 0.299)

    def test_empty_raster_rejected(self):
        with pytest.raises(imaging.DimensionError):
            imaging.to_grayscale(np.zeros((0, 4, 3), dtype=np.uint8))

    def test_dims_preserved(self):
        rgb = np.zeros((7, 11, 3), dtype=np.uint8)
        assert imaging.to_grayscale(rgb).shape == (7, 11)


class TestMedianFilter:
    def test_constant_image(self):
        img = np.full((9, 9), 0.37)
        assert np.array_equal(imaging.median_filter(img, 1), img)

    def test_single_hot_pixel_removed(self):
        img = np.zeros((5, 5))
        img[2, 2] = 1.0
        assert np.all(imaging.median_filter(img, 1) == 0.0)

    def test_matches_oracle_random(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            img = rand_gray(rng)
            got = imaging.median_filter(img, 1)
            assert np.array_equal(got, oracles.median_oracle(img, 1))

    def test_radius_validation(self):
        with pytest.raises(imaging.ParameterError):
            imaging.median_filter(np.zeros((4, 4)), 0)


class TestBoxFilter:
    def test_constant_image(self):
        for size in (1, 3, 4, 20):
            img = np.full((10, 12), 0.25)
            out = imaging.box_filter(img, size)
            assert np.allclose(out, 0.25, atol=1e-12)

    def test_impulse_spreads_to_ninth(self):
        img = np.zeros((8, 8))
        img[4, 4] = 1.0
        out = imaging.box_filter(img, 3)
        assert out[4, 4] == 1.0 / 9.0
        assert out[3, 4] == 1.0 / 9.0
        assert out[5, 5] == 1.0 / 9.0
        assert out[4, 6] == 0.0

    def test_even_size_anchor(self):
        # size-2 window at (y, x) spans rows/cols y..y+1, x..x+1
        img = np.zeros((6, 6))
        img[3, 3] = 1.0
        out = imaging.box_filter(img, 2)
        hot = np.argwhere(out > 0)
        assert sorted(map(tuple, hot)) == [(2, 2), (2, 3), (3, 2), (3, 3)]

    def test_matches_oracle_size_20(self):
        rng = np.random.default_rng(12)
        img = rand_gray(rng, 32, 32)
        got = imaging.box_filter(img, 20)
        assert np.abs(got - oracles.box_oracle(img, 20)).max() <= 1e-12

    def test_size_validation(self):
        with pytest.raises(imaging.ParameterError):
            imaging.box_filter(np.zeros((4, 4)), 0)


class TestDifference:
    def test_identical_inputs(self):
        rng = np.random.default_rng(13)
        img = rand_gray(rng)
        assert np.all(imaging.difference(img, img) == 0.0)

    def test_matches_elementwise_oracle(self):
        rng = np.random.default_rng(14)
        a, b = rand_gray(rng), rand_gray(rng)
        assert np.array_equal(imaging.difference(a, b), np.maximum(a - b, 0.0))

    def test_dimension_mismatch(self):
        with pytest.raises(imaging.DimensionError):
            imaging.difference(np.zeros((3, 3)), np.zeros((3, 4)))


class TestThreshold:
    def test_strictly_above(self):
        img = np.array([[0.05, 0.03, 0.029999]])
        out = imaging.threshold(img, 0.03)
        assert out.tolist() == [[1, 0, 0]]

    def test_all_zero(self):
        assert np.all(imaging.threshold(np.zeros((4, 4)), 0.0) == 0)

    def test_nonfinite_threshold_rejected(self):
        with pytest.raises(imaging.ParameterError):
            imaging.threshold(np.zeros((2, 2)), float("nan"))


class TestSobel:
    def test_constant_image(self):
        img = np.full((8, 8), 0.5)
        assert np.all(imaging.sobel_edges(img, 0.0) == 0)

    def test_vertical_step(self):
        img = np.zeros((8, 8))
        img[:, 4:] = 1.0
        out = imaging.sobel_edges(img, 0.5)
        expected = np.zeros((8, 8), dtype=np.uint8)
        expected[:, 3:5] = 1
        assert np.array_equal(out, expected)

    def test_magnitude_matches_oracle(self):
        rng = np.random.default_rng(15)
        img = rand_gray(rng)
        got = imaging.sobel_magnitude(img)
        assert np.abs(got - oracles.sobel_magnitude_oracle(img)).max() <= 1e-12

    def test_accepts_binary_input(self):
        rng = np.random.default_rng(16)
        b = rand_binary(rng)
        out = imaging.sobel_edges(b, 0.5)
        assert out.dtype == np.uint8
        assert set(np.unique(out).tolist()) <= {0, 1}


class TestConnectedComponents:
    def test_empty_image(self):
        labels, regions = imaging.connected_components(np.zeros((6, 6), dtype=np.uint8))
        assert regions == []
        assert np.all(labels == 0)

    def test_two_squares(self):
        img = np.zeros((10, 10), dtype=np.uint8)
        img[1:4, 1:4] = 1
        img[6:9, 5:8] = 1
        labels, regions = imaging.connected_components(img)
        assert len(regions) == 2
        for r in regions:
            assert r.area == 9
            assert r.extent == 1.0
        assert regions[0].bbox == (1, 1, 3, 3)
        assert regions[1].bbox == (5, 6, 7, 8)

    def test_diagonal_touch_is_connected(self):
        img = np.zeros((4, 4), dtype=np.uint8)
        img[1, 1] = 1
        img[2, 2] = 1
        _, regions = imaging.connected_components(img)
        assert len(regions) == 1
        assert regions[0].area == 2

    def test_matches_oracle_random(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            img = rand_binary(rng)
            labels, regions = imaging.connected_components(img)
            olabels, oregions = oracles.connected_components_oracle(img)
            assert np.array_equal(labels, olabels)
            assert [(r.label, r.area, r.bbox) for r in regions] == oregions

    def test_partition_property(self):
        rng = np.random.default_rng(18)
        img = rand_binary(rng, 24, 24)
        _, regions = imaging.connected_components(img)
        assert sum(r.area for r in regions) == int(img.sum())


class TestClearBorder:
    def test_component_on_edge_removed(self):
        img = np.zeros((6, 6), dtype=np.uint8)
        img[2:4, 0:3] = 1
        assert np.all(imaging.clear_border_components(img) == 0)

    def test_interior_untouched(self):
        img = np.zeros((7, 7), dtype=np.uint8)
        img[2:5, 2:5] = 1
        assert np.array_equal(imaging.clear_border_components(img), img)

    def test_empty(self):
        img = np.zeros((5, 5), dtype=np.uint8)
        assert np.array_equal(imaging.clear_border_components(img), img)

    def test_matches_oracle_and_is_idempotent(self):
        rng = np.random.default_rng(19)
        for _ in range(10):
            img = rand_binary(rng)
            got = imaging.clear_border_components(img)
            assert np.array_equal(got, oracles.clear_border_oracle(img))
            assert np.array_equal(imaging.clear_border_components(got), got)


class TestFillHoles:
    def test_solid_rectangle_unchanged(self):
        img = np.zeros((9, 9), dtype=np.uint8)
        img[2:6, 3:8] = 1
        assert np.array_equal(imaging.fill_holes(img), img)

    def test_rectangle_outline_fills_solid(self):
        img = np.zeros((11, 13), dtype=np.uint8)
        img[2:9, 2:11] = 1
        img[3:8, 3:10] = 0  # hollow it out: 1-px-thick 7x9 outline
        expected = np.zeros((11, 13), dtype=np.uint8)
        expected[2:9, 2:11] = 1
        assert np.array_equal(imaging.fill_holes(img), expected)

    def test_matches_oracle_monotone_idempotent(self):
        rng = np.random.default_rng(20)
        for _ in range(10):
            img = rand_binary(rng)
            got = imaging.fill_holes(img)
            assert np.array_equal(got, oracles.fill_holes_oracle(img))
            assert np.all(got >= img)  # never clears a set pixel
            assert np.array_equal(imaging.fill_holes(got), got)


class TestComplement:
    def test_all_ones(self):
        img = np.ones((3, 3), dtype=np.uint8)
        assert np.all(imaging.complement(img) == 0)

    def test_involution(self):
        rng = np.random.default_rng(21)
        img = rand_binary(rng)
        assert np.array_equal(imaging.complement(imaging.complement(img)), img)

    def test_checkerboard(self):
        img = np.indices((4, 4)).sum(axis=0) % 2
        img = img.astype(np.uint8)
        assert np.array_equal(imaging.complement(img), 1 - img)


class TestResizeNearest:
    def test_identity(self):
        rng = np.random.default_rng(22)
        img = rand_binary(rng, 13, 7)
        assert np.array_equal(imaging.resize_nearest(img, 13, 7), img)

    def test_checkerboard_upscale(self):
        img = np.array([[0, 1], [1, 0]], dtype=np.uint8)
        out = imaging.resize_nearest(img, 4, 4)
        expected = np.array(
            [[0, 0, 1, 1], [0, 0, 1, 1], [1, 1, 0, 0], [1, 1, 0, 0]], dtype=np.uint8
        )
        assert np.array_equal(out, expected)

    def test_plate_normalization_dims(self):
        rng = np.random.default_rng(23)
        img = rand_binary(rng, 40, 160)
        out = imaging.resize_nearest(img, 175, 730)
        assert out.shape == (175, 730)
        assert set(np.unique(out).tolist()) <= {0, 1}

    def test_size_validation(self):
        with pytest.raises(imaging.ParameterError):
            imaging.resize_nearest(np.zeros((3, 3), dtype=np.uint8), 0, 5)
