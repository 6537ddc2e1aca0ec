"""Plate localization: blur-subtract enhancement plus geometric candidate search.

The stage sequence is fixed: median -> enhance -> clear borders -> Sobel ->
hole fill -> component scan -> score -> crop. Smooth illumination changes
cancel in the blur-subtract step, which is what makes the localizer hold up
under uneven lighting.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import imaging
from .imaging import BinaryImage, GrayImage, Region


class NoPlateFound(Exception):
    """No component passed the plate-geometry gates."""


@dataclass(frozen=True)
class ExtractionParams:
    """Tunables for plate localization.

    box_size and diff_threshold drive the enhancement; the remaining
    fields gate which filled components count as plate-shaped. All of the
    geometry gates are heuristics and deliberately configurable.
    """

    box_size: int = 20
    diff_threshold: float = 0.03
    median_radius: int = 1
    edge_threshold: float = 0.5
    min_extent: float = 0.5
    aspect_min: float = 2.0
    aspect_max: float = 6.0
    min_area_frac: float = 0.001
    max_area_frac: float = 0.15

    def __post_init__(self) -> None:
        if not self.aspect_min < self.aspect_max:
            raise ValueError("aspect_min must be < aspect_max")
        if not 0.0 < self.min_area_frac < self.max_area_frac < 1.0:
            raise ValueError("need 0 < min_area_frac < max_area_frac < 1")


@dataclass(frozen=True)
class PlateCandidate:
    region: Region
    score: float


@dataclass(frozen=True)
class ExtractedPlate:
    """Isolated plate crop.

    ``bbox`` is (x_min, y_min, x_max, y_max) inclusive in source-image
    coordinates; ``gray`` is the source crop with out-of-mask pixels
    zeroed; ``mask`` is the winning filled component.
    """

    bbox: tuple[int, int, int, int]
    gray: GrayImage
    mask: BinaryImage


def enhance_edges(gray: GrayImage, p: ExtractionParams | None = None) -> BinaryImage:
    """Binary image of pixels standing out from their local box-blur mean.

    Additive intensity offsets cancel in the subtraction, so the output is
    invariant to uniform illumination shifts.
    """
    p = p or ExtractionParams()
    blurred = imaging.box_filter(gray, p.box_size)
    return imaging.threshold(imaging.difference(gray, blurred), p.diff_threshold)


def score_candidate(
    region: Region, image_area: int, p: ExtractionParams | None = None
) -> PlateCandidate | None:
    """Gate a region on aspect/extent/area; score survivors by extent * area.

    Returns None when the region is not plate-shaped (rejection is a
    value, not an error).
    """
    p = p or ExtractionParams()
    aspect = region.width / region.height
    if not p.aspect_min <= aspect <= p.aspect_max:
        return None
    if region.extent < p.min_extent:
        return None
    if not p.min_area_frac * image_area <= region.area <= p.max_area_frac * image_area:
        return None
    return PlateCandidate(region=region, score=region.extent * region.area)


def _dump(debug_dir, index: int, name: str, raster) -> None:
    if debug_dir is not None:
        from . import imgio

        Path(debug_dir).mkdir(parents=True, exist_ok=True)
        imgio.write_pgm(Path(debug_dir) / f"{index:02d}_{name}.pgm", raster)


def extract_plate(
    gray: GrayImage,
    p: ExtractionParams | None = None,
    debug_dir: str | None = None,
) -> ExtractedPlate:
    """Locate and isolate the best plate-shaped region.

    Raises NoPlateFound when nothing passes the geometry gates; callers
    treat that as a plateless frame, not a failure.
    """
    p = p or ExtractionParams()
    gray = np.ascontiguousarray(gray, dtype=np.float64)

    smoothed = imaging.median_filter(gray, p.median_radius)
    _dump(debug_dir, 0, "median", smoothed)
    blurred = imaging.box_filter(smoothed, p.box_size)
    diff = imaging.difference(smoothed, blurred)
    _dump(debug_dir, 1, "difference", diff)
    binary = imaging.threshold(diff, p.diff_threshold)
    _dump(debug_dir, 2, "binary", binary)
    interior = imaging.clear_border_components(binary)
    edges = imaging.sobel_edges(interior, p.edge_threshold)
    _dump(debug_dir, 3, "sobel", edges)
    filled = imaging.fill_holes(edges)
    _dump(debug_dir, 4, "filled", filled)

    labels, regions = imaging.connected_components(filled)
    image_area = gray.shape[0] * gray.shape[1]
    candidates = [
        c for r in regions if (c := score_candidate(r, image_area, p)) is not None
    ]
    if not candidates:
        raise NoPlateFound("no plate-shaped component in frame")

    # max score; ties prefer larger area, then topmost-leftmost bbox
    best = min(
        candidates,
        key=lambda c: (-c.score, -c.region.area, c.region.bbox[1], c.region.bbox[0]),
    )
    x0, y0, x1, y1 = best.region.bbox
    mask = (labels[y0 : y1 + 1, x0 : x1 + 1] == best.region.label).astype(np.uint8)
    crop = gray[y0 : y1 + 1, x0 : x1 + 1] * mask
    _dump(debug_dir, 5, "mask", mask)
    return ExtractedPlate(bbox=best.region.bbox, gray=crop, mask=mask)
