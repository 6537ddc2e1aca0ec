"""Synthetic vehicle-frame generator with exact ground truth.

Frames carry one bright plate with near-black glyph ink, a smooth
textured background, optional sharp non-plate distractors, a
multiplicative horizontal illumination ramp, and salt-and-pepper noise.
Glyphs are rendered by nearest-resizing the bundled masters, so no font
machinery is needed at run time.
"""

from __future__ import annotations

import csv
import functools
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import imgio
from .imaging import resize_nearest
from .ocr import SYMBOLS

LETTERS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
DIGITS = "0123456789"

FRAME_W, FRAME_H = 960, 480


@dataclass(frozen=True)
class GroundTruth:
    text: str
    plate_box: tuple[int, int, int, int]  # x, y, w, h in frame pixels


@functools.lru_cache(maxsize=1)
def load_masters() -> dict[str, np.ndarray]:
    """Bundled high-resolution glyph bitmaps, 1 = ink."""
    root = resources.files("platetrace").joinpath("data", "glyphs")
    masters = {}
    for symbol in SYMBOLS:
        gray = imgio.read_gray(Path(str(root)) / f"{symbol}.pgm")
        masters[symbol] = (gray > 0.5).astype(np.uint8)
    return masters


def random_plate_text(rng: np.random.Generator) -> str:
    """Ten characters in the common LLDDLLDDDD registration layout."""
    pick = lambda pool, n: "".join(rng.choice(list(pool), size=n))
    return pick(LETTERS, 2) + pick(DIGITS, 2) + pick(LETTERS, 2) + pick(DIGITS, 4)


def render_plate(text: str, plate_h: int, plate_w: int, body: float = 0.85) -> np.ndarray:
    """Bright plate raster with glyph ink at exactly 0.0.

    Glyph height targets 62% of the plate height but shrinks to fit the
    width budget; advance widths follow the masters' natural aspect.
    """
    if not text or any(c not in SYMBOLS for c in text):
        raise ValueError(f"plate text must be non-empty [A-Z0-9]+, got {text!r}")
    masters = load_masters()
    aspects = [masters[c].shape[1] / masters[c].shape[0] for c in text]
    gap_frac = 0.12 * (sum(aspects) / len(aspects))
    margin = max(2, round(0.045 * plate_w))
    avail = plate_w - 2 * margin
    unit_w = sum(aspects) + gap_frac * (len(text) - 1)
    g_h = min(int(0.62 * plate_h), max(4, int(avail / unit_w)))

    plate = np.full((plate_h, plate_w), body, dtype=np.float64)
    widths = [max(2, round(a * g_h)) for a in aspects]
    gap = max(2, round(gap_frac * g_h))
    total = sum(widths) + gap * (len(text) - 1)
    x = max(margin, (plate_w - total) // 2)
    y = max(1, (plate_h - g_h) // 2)
    for c, w in zip(text, widths):
        glyph = resize_nearest(masters[c], g_h, w)
        block = plate[y : y + g_h, x : x + w]
        block[glyph[: block.shape[0], : block.shape[1]] == 1] = 0.0
        x += w + gap
    return plate


def _soft_blobs(rng, X, Y, count) -> np.ndarray:
    h, w = X.shape
    field = np.zeros((h, w))
    for _ in range(count):
        cx, cy = rng.uniform(0, w), rng.uniform(0, h)
        rx, ry = rng.uniform(w * 0.08, w * 0.3), rng.uniform(h * 0.08, h * 0.3)
        delta = rng.uniform(-0.15, 0.15)
        field += delta * np.exp(-(((X - cx) / rx) ** 2 + ((Y - cy) / ry) ** 2))
    return field


def _rects_overlap(a, b, pad) -> bool:
    ax, ay, aw, ah = a
    bx, by, bw, bh = b
    return not (
        ax - pad >= bx + bw or bx >= ax + aw + pad or ay - pad >= by + bh or by >= ay + ah + pad
    )


def render_frame(
    rng: np.random.Generator,
    *,
    text: str | None = None,
    frame_w: int = FRAME_W,
    frame_h: int = FRAME_H,
    scale: float | None = None,
    aspect: float | None = None,
    ramp_amp: float | None = None,
    noise_frac: float | None = None,
    distractors: bool = True,
) -> tuple[np.ndarray, GroundTruth]:
    """One synthetic frame plus its ground truth.

    ``scale`` is the plate height as a fraction of frame height
    (default uniform in [0.08, 0.25]); ``ramp_amp`` the multiplicative
    illumination ramp amplitude (default uniform in [0, 0.3]);
    ``noise_frac`` the salt-and-pepper pixel fraction (default uniform
    in [0, 0.01]).
    """
    text = text or random_plate_text(rng)
    scale = float(rng.uniform(0.08, 0.25)) if scale is None else scale
    ramp_amp = float(rng.uniform(0.0, 0.3)) if ramp_amp is None else ramp_amp
    noise_frac = float(rng.uniform(0.0, 0.01)) if noise_frac is None else noise_frac

    plate_h = max(16, round(scale * frame_h))
    if aspect is None:
        aspect = float(rng.uniform(3.9, 4.3))
    plate_w = round(plate_h * aspect)

    Y, X = np.mgrid[0:frame_h, 0:frame_w].astype(np.float64)
    base = rng.uniform(0.2, 0.45)
    tilt = rng.uniform(-0.1, 0.1)
    frame = base + tilt * (Y / frame_h - 0.5) + _soft_blobs(rng, X, Y, int(rng.integers(3, 7)))
    frame = np.clip(frame, 0.06, 0.55)

    inset = 28
    px = int(rng.integers(inset, frame_w - plate_w - inset))
    py = int(rng.integers(inset, frame_h - plate_h - inset))
    plate_box = (px, py, plate_w, plate_h)

    if distractors:
        for _ in range(int(rng.integers(1, 4))):
            for _attempt in range(20):
                # wrong-aspect sharp shapes: squares and tall bars
                if rng.random() < 0.5:
                    dw = int(rng.integers(30, 90))
                    dh = int(dw * rng.uniform(0.8, 1.3))
                else:
                    dh = int(rng.integers(60, 160))
                    dw = int(dh * rng.uniform(0.2, 0.45))
                dx = int(rng.integers(2, max(3, frame_w - dw - 2)))
                dy = int(rng.integers(2, max(3, frame_h - dh - 2)))
                if not _rects_overlap((dx, dy, dw, dh), plate_box, pad=44):
                    level = np.clip(
                        frame[dy : dy + dh, dx : dx + dw].mean()
                        + rng.choice([-1.0, 1.0]) * rng.uniform(0.15, 0.3),
                        0.05,
                        0.55,
                    )
                    frame[dy : dy + dh, dx : dx + dw] = level
                    break

    body = rng.uniform(0.78, 0.88)
    frame[py : py + plate_h, px : px + plate_w] = render_plate(text, plate_h, plate_w, body)

    direction = rng.choice([-1.0, 1.0])
    ramp = 1.0 + direction * ramp_amp * (2.0 * X / (frame_w - 1) - 1.0)
    frame = frame * ramp

    if noise_frac > 0:
        n = int(noise_frac * frame.size)
        ys = rng.integers(0, frame_h, size=n)
        xs = rng.integers(0, frame_w, size=n)
        frame[ys, xs] = (rng.random(n) < 0.5).astype(np.float64)

    return np.clip(frame, 0.0, 1.0), GroundTruth(text=text, plate_box=plate_box)


def write_corpus(out_dir: str | Path, count: int, seed: int) -> Path:
    """Write `count` frames plus a manifest.csv; returns the manifest path.

    Manifest rows are `path,expected_plate,x,y,w,h` with paths relative
    to the manifest's directory.
    """
    out = Path(out_dir)
    frames = out / "frames"
    frames.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    manifest = out / "manifest.csv"
    with open(manifest, "w", newline="") as fh:
        writer = csv.writer(fh)
        for i in range(count):
            frame, truth = render_frame(rng)
            rel = f"frames/frame_{i:03d}.png"
            imgio.write_png_gray(out / rel, frame)
            x, y, w, h = truth.plate_box
            writer.writerow([rel, truth.text, x, y, w, h])
    return manifest
