#!/usr/bin/env python3
"""Regenerate the bundled glyph masters and the default template set.

Development-only tool: the rendered PGM files are committed, so normal
installs never need a font or matplotlib. Masters are tight-cropped
high-resolution glyph rasters (ink = 255); templates are the same glyphs
at the canonical matcher size.

Usage: python tools/render_glyphs.py [--font PATH]
"""

import argparse
import sys
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw, ImageFont

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from platetrace.imaging import connected_components, resize_nearest  # noqa: E402
from platetrace.imgio import write_pgm  # noqa: E402
from platetrace.ocr import CANON_H, CANON_W, SYMBOLS  # noqa: E402

FONT_SIZE = 160
STYLE = "mono"


def default_font_path() -> str:
    import matplotlib

    return str(
        Path(matplotlib.get_data_path()) / "fonts" / "ttf" / "DejaVuSansMono-Bold.ttf"
    )


def render_master(symbol: str, font: ImageFont.FreeTypeFont) -> np.ndarray:
    canvas = Image.new("L", (FONT_SIZE * 2, FONT_SIZE * 2), 0)
    draw = ImageDraw.Draw(canvas)
    draw.text((FONT_SIZE // 2, FONT_SIZE // 2), symbol, fill=255, font=font)
    arr = np.asarray(canvas).copy()
    ink = arr > 127
    if not ink.any():
        raise RuntimeError(f"font produced no ink for {symbol!r}")
    ys, xs = np.nonzero(ink)
    y0, y1, x0, x1 = ys.min(), ys.max(), xs.min(), xs.max()
    if symbol == "0":
        # replace the face's detached center dot with a through-slash: a
        # disconnected mark would not survive bounding-box segmentation
        h, w = y1 - y0 + 1, x1 - x0 + 1
        draw.line(
            [
                (x0 + 0.20 * w, y0 + 0.80 * h),
                (x0 + 0.80 * w, y0 + 0.20 * h),
            ],
            fill=255,
            width=max(3, h // 9),
        )
        arr = np.asarray(canvas)
        ink = arr > 127
    master = ink[y0 : y1 + 1, x0 : x1 + 1].astype(np.uint8)
    _, regions = connected_components(master)
    if len(regions) != 1:
        raise RuntimeError(f"{symbol!r} master has {len(regions)} components, want 1")
    return master


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--font", default=None, help="TTF file to render from")
    args = parser.parse_args()

    font = ImageFont.truetype(args.font or default_font_path(), FONT_SIZE)
    glyph_dir = REPO / "src" / "platetrace" / "data" / "glyphs"
    template_dir = REPO / "src" / "platetrace" / "data" / "templates"
    glyph_dir.mkdir(parents=True, exist_ok=True)

    for symbol in SYMBOLS:
        master = render_master(symbol, font)
        write_pgm(glyph_dir / f"{symbol}.pgm", master)
        sym_dir = template_dir / symbol
        sym_dir.mkdir(parents=True, exist_ok=True)
        template = resize_nearest(master, CANON_H, CANON_W)
        write_pgm(sym_dir / f"{STYLE}.pgm", template)
        print(f"{symbol}: master {master.shape[1]}x{master.shape[0]}")


if __name__ == "__main__":
    main()
