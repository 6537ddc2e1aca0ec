"""Image file I/O: 8-bit PNG plus binary PPM/PGM (P5/P6).

PGM is also the dump format for intermediate rasters; binary images
serialize as PGM with values {0, 255}.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from PIL import Image

from .imaging import BinaryImage, GrayImage, to_grayscale


class ImageFormatError(ValueError):
    """File is not a readable 8-bit PNG/PGM/PPM raster."""


def _read_pnm_tokens(data: bytes, count: int) -> tuple[list[int], int]:
    """Parse `count` ASCII integers from a PNM header, honoring # comments.

    Returns the values and the offset just past the single whitespace byte
    that terminates the header.
    """
    tokens: list[int] = []
    i = 0
    while len(tokens) < count:
        if i >= len(data):
            raise ImageFormatError("truncated PNM header")
        c = data[i : i + 1]
        if c == b"#":
            while i < len(data) and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
        elif c.isspace():
            i += 1
        else:
            j = i
            while j < len(data) and not data[j : j + 1].isspace() and data[j : j + 1] != b"#":
                j += 1
            try:
                tokens.append(int(data[i:j]))
            except ValueError as exc:
                raise ImageFormatError(f"bad PNM header token {data[i:j]!r}") from exc
            i = j
    if i >= len(data) or not data[i : i + 1].isspace():
        raise ImageFormatError("PNM header not terminated by whitespace")
    return tokens, i + 1


def _read_pnm(path: Path) -> np.ndarray:
    raw = path.read_bytes()
    magic = raw[:2]
    if magic not in (b"P5", b"P6"):
        raise ImageFormatError(f"{path}: unsupported PNM magic {magic!r}")
    channels = 1 if magic == b"P5" else 3
    (w, h, maxval), offset = _read_pnm_tokens(raw[2:], 3)
    offset += 2
    if w <= 0 or h <= 0:
        raise ImageFormatError(f"{path}: invalid dimensions {w}x{h}")
    if maxval <= 0 or maxval > 255:
        raise ImageFormatError(f"{path}: only 8-bit PNM supported (maxval {maxval})")
    n = w * h * channels
    payload = raw[offset : offset + n]
    if len(payload) < n:
        raise ImageFormatError(f"{path}: truncated pixel data")
    arr = np.frombuffer(payload, dtype=np.uint8).reshape(
        (h, w) if channels == 1 else (h, w, 3)
    )
    return arr.copy()


def read_rgb(path: str | os.PathLike) -> np.ndarray:
    """Read a PNG or PPM file as an (h, w, 3) uint8 raster."""
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such image file: {p}")
    if p.suffix.lower() in (".pgm", ".ppm", ".pnm"):
        arr = _read_pnm(p)
        if arr.ndim == 2:
            arr = np.repeat(arr[:, :, None], 3, axis=2)
        return arr
    try:
        with Image.open(p) as im:
            return np.asarray(im.convert("RGB"))
    except Exception as exc:
        raise ImageFormatError(f"{p}: {exc}") from exc


def read_gray(path: str | os.PathLike) -> GrayImage:
    """Read any supported image as a [0, 1] grayscale raster.

    Single-channel sources map v/255 directly; RGB sources go through the
    luma conversion.
    """
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such image file: {p}")
    if p.suffix.lower() in (".pgm", ".ppm", ".pnm"):
        arr = _read_pnm(p)
        if arr.ndim == 2:
            return arr.astype(np.float64) / 255.0
        return to_grayscale(arr)
    try:
        with Image.open(p) as im:
            if im.mode in ("L", "I;16", "I"):
                return np.asarray(im.convert("L")).astype(np.float64) / 255.0
            return to_grayscale(np.asarray(im.convert("RGB")))
    except Exception as exc:
        raise ImageFormatError(f"{p}: {exc}") from exc


def write_pgm(path: str | os.PathLike, img: GrayImage | BinaryImage) -> None:
    """Write a raster as binary PGM (P5).

    Float images are clipped to [0, 1] and scaled to 0..255; uint8 binary
    images map {0, 1} to {0, 255}.
    """
    arr = np.asarray(img)
    if arr.ndim != 2:
        raise ImageFormatError(f"PGM needs a 2-D raster, got shape {arr.shape}")
    if arr.dtype == np.uint8:
        data = arr * 255 if arr.max(initial=0) <= 1 else arr
    else:
        data = np.rint(np.clip(arr, 0.0, 1.0) * 255.0).astype(np.uint8)
    p = Path(path)
    header = f"P5\n{arr.shape[1]} {arr.shape[0]}\n255\n".encode("ascii")
    p.write_bytes(header + np.ascontiguousarray(data, dtype=np.uint8).tobytes())


def write_png_gray(path: str | os.PathLike, img: GrayImage) -> None:
    """Write a [0, 1] gray raster as 8-bit grayscale PNG."""
    data = np.rint(np.clip(np.asarray(img), 0.0, 1.0) * 255.0).astype(np.uint8)
    Image.fromarray(data, mode="L").save(Path(path), format="PNG")
