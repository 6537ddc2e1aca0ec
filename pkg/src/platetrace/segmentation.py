"""Character segmentation without morphology.

Two bounding-box passes: the first crops the plate shape tight and
normalizes it to a fixed raster, the second cuts out the surviving
components as glyphs. Because glyph bitmaps are exact sub-rasters of the
cleaned plate, character shapes are never distorted.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import imaging
from .extraction import ExtractedPlate
from .imaging import BinaryImage


class EmptyPlate(Exception):
    """Thresholding the plate crop produced no foreground."""


class NoCharacters(Exception):
    """Debris filtering left nothing to segment."""


@dataclass(frozen=True)
class SegmentationParams:
    """Normalization size and the character-area acceptance band.

    The area band is calibrated to the fixed 175x730 raster, which is why
    normalization always happens before filtering. Components exactly at
    a bound are kept; only strictly-outside areas are debris.
    """

    bin_threshold: float = 0.01
    norm_h: int = 175
    norm_w: int = 730
    min_char_area: int = 1000
    max_char_area: int = 8000

    def __post_init__(self) -> None:
        if not 0 < self.min_char_area < self.max_char_area:
            raise ValueError("need 0 < min_char_area < max_char_area")


@dataclass(frozen=True)
class Glyph:
    """One segmented character: an exact sub-raster of the cleaned plate.

    ``bbox`` is inclusive, in normalized-plate coordinates; 1 = ink.
    """

    bitmap: BinaryImage
    bbox: tuple[int, int, int, int]
    order_index: int


def normalize_plate(
    plate: ExtractedPlate, p: SegmentationParams | None = None
) -> BinaryImage:
    """Binarize, crop to the dominant shape, normalize, invert, clear borders."""
    p = p or SegmentationParams()
    binary = imaging.threshold(plate.gray, p.bin_threshold)
    _, regions = imaging.connected_components(binary)
    if not regions:
        raise EmptyPlate("plate crop thresholded to empty")
    largest = max(regions, key=lambda r: (r.area, -r.label))
    x0, y0, x1, y1 = largest.bbox
    cropped = binary[y0 : y1 + 1, x0 : x1 + 1]
    resized = imaging.resize_nearest(cropped, p.norm_h, p.norm_w)
    inverted = imaging.complement(resized)
    return imaging.clear_border_components(inverted)


def filter_debris(norm: BinaryImage, p: SegmentationParams | None = None) -> BinaryImage:
    """Clear components with area outside [min_char_area, max_char_area]."""
    p = p or SegmentationParams()
    labels, regions = imaging.connected_components(norm)
    if not regions:
        return norm.copy()
    keep = np.zeros(len(regions) + 1, dtype=np.uint8)
    for r in regions:
        if p.min_char_area <= r.area <= p.max_char_area:
            keep[r.label] = 1
    return keep[labels]


def segment_characters(
    plate: ExtractedPlate,
    p: SegmentationParams | None = None,
    debug_dir: str | None = None,
) -> list[Glyph]:
    """Emit glyphs left-to-right from the normalized, debris-filtered plate."""
    p = p or SegmentationParams()
    norm = normalize_plate(plate, p)
    cleaned = filter_debris(norm, p)
    if debug_dir is not None:
        from . import imgio

        out = Path(debug_dir)
        out.mkdir(parents=True, exist_ok=True)
        imgio.write_pgm(out / "normalized.pgm", norm)
        imgio.write_pgm(out / "cleaned.pgm", cleaned)

    _, regions = imaging.connected_components(cleaned)
    if not regions:
        raise NoCharacters("no components in the character-area band")

    ordered = sorted(regions, key=lambda r: (r.bbox[0], r.bbox[1]))
    glyphs = []
    for i, r in enumerate(ordered):
        x0, y0, x1, y1 = r.bbox
        bitmap = cleaned[y0 : y1 + 1, x0 : x1 + 1].copy()
        glyphs.append(Glyph(bitmap=bitmap, bbox=r.bbox, order_index=i))
        if debug_dir is not None:
            from . import imgio

            imgio.write_pgm(Path(debug_dir) / f"glyph_{i:02d}.pgm", bitmap)
    return glyphs
