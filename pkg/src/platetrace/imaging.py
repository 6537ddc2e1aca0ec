"""Raster primitives: filters, thresholds, edges, components.

Images are plain numpy arrays:

* ``GrayImage``   -- 2-D float64, canonical intensity range [0.0, 1.0]
  (difference images may legitimately leave that range).
* ``BinaryImage`` -- 2-D uint8 with values in {0, 1}.

Every operation is a pure function; window operations use replicate
(clamp) borders and keep the input dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backends

GrayImage = np.ndarray
BinaryImage = np.ndarray

# Luma weights scaled to integers: 299 + 587 + 114 == 1000 exactly, which
# keeps pure white at exactly 1.0 in float arithmetic.
_LUMA_R, _LUMA_G, _LUMA_B = 299, 587, 114


class DimensionError(ValueError):
    """Raster has invalid/mismatched dimensions."""


class ParameterError(ValueError):
    """Operation parameter outside its valid range."""


def _as_gray(img: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(img, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"expected non-empty 2-D raster, got shape {img.shape}")
    return arr


def _as_binary(img: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(img, dtype=np.uint8)
    if arr.ndim != 2 or arr.size == 0:
        raise DimensionError(f"expected non-empty 2-D raster, got shape {img.shape}")
    return arr


@dataclass(frozen=True)
class Region:
    """A labeled 8-connected component.

    ``bbox`` is (x_min, y_min, x_max, y_max) with inclusive pixel
    coordinates; ``extent`` is area divided by bounding-box area.
    """

    label: int
    area: int
    bbox: tuple[int, int, int, int]

    @property
    def width(self) -> int:
        return self.bbox[2] - self.bbox[0] + 1

    @property
    def height(self) -> int:
        return self.bbox[3] - self.bbox[1] + 1

    @property
    def extent(self) -> float:
        return self.area / (self.width * self.height)


def to_grayscale(rgb: np.ndarray) -> GrayImage:
    """Convert an interleaved 8-bit RGB raster to [0, 1] grayscale.

    Uses the ITU-R 601 luma weights 0.299/0.587/0.114.
    """
    arr = np.asarray(rgb)
    if arr.ndim != 3 or arr.shape[2] != 3 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise DimensionError(f"expected (h, w, 3) RGB raster, got shape {arr.shape}")
    arr = arr.astype(np.float64)
    luma = _LUMA_R * arr[:, :, 0] + _LUMA_G * arr[:, :, 1] + _LUMA_B * arr[:, :, 2]
    return luma / (1000.0 * 255.0)


def median_filter(img: GrayImage, radius: int = 1) -> GrayImage:
    """Median of each (2r+1)x(2r+1) replicate-padded neighborhood."""
    if radius < 1:
        raise ParameterError(f"median radius must be >= 1, got {radius}")
    return backends.median_filter(_as_gray(img), int(radius))


def box_filter(img: GrayImage, size: int) -> GrayImage:
    """Mean of each size x size replicate-padded neighborhood.

    For even sizes the output pixel sits at offset ((size-1)//2, (size-1)//2)
    from the window's top-left corner, so a size-20 window spans
    rows y-9 .. y+10.
    """
    if size < 1:
        raise ParameterError(f"box size must be >= 1, got {size}")
    return backends.box_filter(_as_gray(img), int(size))


def difference(original: GrayImage, blurred: GrayImage) -> GrayImage:
    """Per-pixel max(original - blurred, 0), emulating unsigned subtraction."""
    a = _as_gray(original)
    b = _as_gray(blurred)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch: {a.shape} vs {b.shape}")
    return np.maximum(a - b, 0.0)


def threshold(img: GrayImage, t: float) -> BinaryImage:
    """1 where the pixel is strictly above t, else 0."""
    if not np.isfinite(t):
        raise ParameterError(f"threshold must be finite, got {t}")
    return (_as_gray(img) > t).astype(np.uint8)


def sobel_magnitude(img: GrayImage) -> GrayImage:
    """Gradient magnitude sqrt(Gx^2 + Gy^2) with the standard 3x3 kernels."""
    return backends.sobel_magnitude(_as_gray(img))


def sobel_edges(img: GrayImage | BinaryImage, edge_t: float = 0.5) -> BinaryImage:
    """Threshold the Sobel gradient magnitude at edge_t (strictly above).

    Binary inputs are accepted by treating the bits as intensities; any
    step edge on a 0/1 image has magnitude >= 1, so the 0.5 default keeps
    exactly the edge pixels.
    """
    return (sobel_magnitude(img) > edge_t).astype(np.uint8)


def _regions_from_labels(labels: np.ndarray, n: int) -> list[Region]:
    if n == 0:
        return []
    flat = labels.ravel()
    fg = np.flatnonzero(flat)
    labs = flat[fg]
    areas = np.bincount(labs, minlength=n + 1)[1:]
    ys, xs = np.divmod(fg, labels.shape[1])
    order = np.argsort(labs, kind="stable")
    starts = np.searchsorted(labs[order], np.arange(1, n + 1))
    x_min = np.minimum.reduceat(xs[order], starts)
    x_max = np.maximum.reduceat(xs[order], starts)
    y_min = np.minimum.reduceat(ys[order], starts)
    y_max = np.maximum.reduceat(ys[order], starts)
    return [
        Region(
            label=i + 1,
            area=int(areas[i]),
            bbox=(int(x_min[i]), int(y_min[i]), int(x_max[i]), int(y_max[i])),
        )
        for i in range(n)
    ]


def connected_components(img: BinaryImage) -> tuple[np.ndarray, list[Region]]:
    """8-connectivity labeling.

    Returns the int32 label map (0 = background, labels 1..N contiguous in
    row-major first-touch order) and one Region per label.
    """
    labels, n = backends.label_components(_as_binary(img), 8)
    return labels, _regions_from_labels(labels, n)


def _border_labels(labels: np.ndarray) -> np.ndarray:
    edges = np.concatenate(
        [labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]]
    )
    uniq = np.unique(edges)
    return uniq[uniq > 0]


def clear_border_components(img: BinaryImage) -> BinaryImage:
    """Remove every 8-connected component that touches the image border."""
    arr = _as_binary(img)
    labels, n = backends.label_components(arr, 8)
    if n == 0:
        return arr.copy()
    keep = np.ones(n + 1, dtype=np.uint8)
    keep[0] = 0
    keep[_border_labels(labels)] = 0
    return keep[labels]


def fill_holes(img: BinaryImage) -> BinaryImage:
    """Fill background cavities not 4-connected-reachable from the border.

    Foreground never shrinks; the operation is idempotent.
    """
    arr = _as_binary(img)
    bg = (arr == 0).astype(np.uint8)
    labels, n = backends.label_components(bg, 4)
    if n == 0:
        return arr.copy()
    enclosed = np.ones(n + 1, dtype=np.uint8)
    enclosed[0] = 0
    enclosed[_border_labels(labels)] = 0
    return arr | enclosed[labels]


def complement(img: BinaryImage) -> BinaryImage:
    """Bitwise negation."""
    arr = _as_binary(img)
    return (1 - arr).astype(np.uint8)


def resize_nearest(img: BinaryImage, out_h: int, out_w: int) -> BinaryImage:
    """Nearest-neighbor resize: source index floor((dst + 0.5) * src / dst).

    Index arithmetic is done in exact integers, so resizing to the same
    dimensions is the identity.
    """
    if out_h < 1 or out_w < 1:
        raise ParameterError(f"target size must be >= 1x1, got {out_h}x{out_w}")
    arr = _as_binary(img)
    h, w = arr.shape
    ys = ((2 * np.arange(out_h, dtype=np.int64) + 1) * h) // (2 * out_h)
    xs = ((2 * np.arange(out_w, dtype=np.int64) + 1) * w) // (2 * out_w)
    return arr[ys[:, None], xs]
