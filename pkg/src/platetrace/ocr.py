"""Template-matching character recognition.

Glyphs and templates are compared at a canonical raster size with a
+/-1-mapped correlation score: both bitmaps map {0,1} -> {-1,+1} and the
score is the mean pixel product, so missing and spurious ink are
penalized equally and the score is symmetric and bounded in [-1, 1].
A small +/-1 px jitter search absorbs crop wobble.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

import numpy as np

from . import imaging, imgio
from .imaging import BinaryImage

if TYPE_CHECKING:
    from .segmentation import Glyph

SYMBOLS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789"
CANON_H, CANON_W = 42, 24


class MissingSymbol(Exception):
    """Template source does not cover some symbol."""

    def __init__(self, symbol: str):
        super().__init__(f"no template for symbol {symbol!r}")
        self.symbol = symbol


class UnreadableFile(Exception):
    """A template file could not be read or holds no ink."""


class EmptyGlyph(Exception):
    """Glyph bitmap has no ink pixels."""


@dataclass(frozen=True)
class Template:
    symbol: str
    bitmap: BinaryImage  # canonical size, 1 = ink
    style_id: str


@dataclass(frozen=True)
class MatchResult:
    symbol: str
    score: float
    runner_up_margin: float


class TemplateSet:
    """Immutable template database covering all 36 plate symbols."""

    def __init__(self, templates: Iterable[Template], canon_h: int = CANON_H, canon_w: int = CANON_W):
        self.canon_h = canon_h
        self.canon_w = canon_w
        self.templates = tuple(templates)
        covered = {t.symbol for t in self.templates}
        for symbol in SYMBOLS:
            if symbol not in covered:
                raise MissingSymbol(symbol)
        for t in self.templates:
            if t.bitmap.shape != (canon_h, canon_w):
                raise ValueError(
                    f"template {t.symbol}/{t.style_id} has shape {t.bitmap.shape}, "
                    f"expected {(canon_h, canon_w)}"
                )
            if not t.bitmap.any():
                raise ValueError(f"template {t.symbol}/{t.style_id} has no ink")
        # signed stack for vectorized scoring
        self._signed = np.stack(
            [t.bitmap.astype(np.float64) * 2.0 - 1.0 for t in self.templates]
        )

    def __len__(self) -> int:
        return len(self.templates)


def score_bitmaps(a: BinaryImage, b: BinaryImage) -> float:
    """Symmetric pairwise score: mean product of the +/-1-mapped bitmaps."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    sa = a.astype(np.int32) * 2 - 1
    sb = b.astype(np.int32) * 2 - 1
    return float((sa * sb).sum()) / a.size


def _binarize_file(path: Path) -> BinaryImage:
    try:
        gray = imgio.read_gray(path)
    except Exception as exc:
        raise UnreadableFile(f"{path}: {exc}") from exc
    return imaging.threshold(gray, 0.5)


def load_templates(
    source: str | Path, canon_h: int = CANON_H, canon_w: int = CANON_W
) -> TemplateSet:
    """Load a `<symbol>/<style>.pgm` directory tree.

    Files are binarized at 0.5 and nearest-resized to the canonical size,
    so the on-disk rasters may be any resolution.
    """
    root = Path(source)
    if not root.is_dir():
        raise UnreadableFile(f"template directory not found: {root}")
    templates = []
    for sym_dir in sorted(root.iterdir()):
        if not sym_dir.is_dir() or sym_dir.name not in SYMBOLS:
            continue
        for f in sorted(sym_dir.iterdir()):
            if f.suffix.lower() not in (".pgm", ".ppm", ".png"):
                continue
            bitmap = imaging.resize_nearest(_binarize_file(f), canon_h, canon_w)
            if not bitmap.any():
                raise UnreadableFile(f"{f}: template has no ink")
            templates.append(Template(symbol=sym_dir.name, bitmap=bitmap, style_id=f.stem))
    return TemplateSet(templates, canon_h, canon_w)


@functools.lru_cache(maxsize=1)
def default_templates() -> TemplateSet:
    """The bundled template set rendered from one open monospace face."""
    return load_templates(resources.files("platetrace").joinpath("data", "templates"))


def _jitter_shifts(canon: np.ndarray) -> np.ndarray:
    """All +/-1 px translations of the canonical raster, zero-filled."""
    h, w = canon.shape
    shifts = np.zeros((9, h, w), dtype=canon.dtype)
    i = 0
    for dy in (-1, 0, 1):
        for dx in (-1, 0, 1):
            src = canon[
                max(0, -dy) : h - max(0, dy), max(0, -dx) : w - max(0, dx)
            ]
            shifts[i][
                max(0, dy) : h - max(0, -dy), max(0, dx) : w - max(0, -dx)
            ] = src
            i += 1
    return shifts


def match_bitmap(bitmap: BinaryImage, ts: TemplateSet | None = None) -> MatchResult:
    """Best-symbol match for one tight-cropped ink bitmap."""
    ts = ts or default_templates()
    if not np.asarray(bitmap).any():
        raise EmptyGlyph("glyph bitmap has no ink")
    canon = imaging.resize_nearest(bitmap, ts.canon_h, ts.canon_w)
    signed = canon.astype(np.float64) * 2.0 - 1.0
    variants = _jitter_shifts(signed)  # (9, H, W)
    # score[v, t] = mean over pixels of variant * template
    scores = np.tensordot(variants, ts._signed, axes=([1, 2], [1, 2]))
    scores /= ts.canon_h * ts.canon_w
    per_template = scores.max(axis=0)

    best_by_symbol: dict[str, float] = {}
    for t, s in zip(ts.templates, per_template):
        prev = best_by_symbol.get(t.symbol)
        if prev is None or s > prev:
            best_by_symbol[t.symbol] = float(s)
    # deterministic argmax: ties go to the lexicographically smallest symbol
    winner = max(sorted(best_by_symbol), key=lambda sym: best_by_symbol[sym])
    others = [s for sym, s in best_by_symbol.items() if sym != winner]
    margin = best_by_symbol[winner] - max(others) if others else 0.0
    return MatchResult(symbol=winner, score=best_by_symbol[winner], runner_up_margin=margin)


def match_glyph(glyph: "Glyph", ts: TemplateSet | None = None) -> MatchResult:
    return match_bitmap(glyph.bitmap, ts)


def recognize_plate(
    glyphs: list["Glyph"], ts: TemplateSet | None = None
) -> tuple[str, list[MatchResult]]:
    """Concatenate per-glyph matches in order; no separators are inserted."""
    ts = ts or default_templates()
    results = []
    for i, g in enumerate(glyphs):
        try:
            results.append(match_glyph(g, ts))
        except EmptyGlyph as exc:
            raise EmptyGlyph(f"glyph {i}: {exc}") from exc
    return "".join(r.symbol for r in results), results
