"""Pure-numpy kernel backend.

Mirrors the contracts of the compiled ``platetrace._kernels`` extension;
``platetrace.backends`` picks whichever is available at import time.
All window operations use replicate (clamp) borders.
"""

import numpy as np


def median_filter(img: np.ndarray, radius: int) -> np.ndarray:
    """Median of the (2r+1)x(2r+1) replicate-padded neighborhood."""
    k = 2 * radius + 1
    padded = np.pad(img, radius, mode="edge")
    windows = np.lib.stride_tricks.sliding_window_view(padded, (k, k))
    return np.median(windows, axis=(-2, -1))


def box_filter(img: np.ndarray, size: int) -> np.ndarray:
    """Mean of the size x size replicate-padded window.

    The window anchored at output pixel (y, x) spans rows
    y - (size-1)//2 .. y + size//2 (same for columns), so odd sizes are
    centered and even sizes lean one pixel down-right.
    """
    top = (size - 1) // 2
    bottom = size - 1 - top
    padded = np.pad(img, ((top, bottom), (top, bottom)), mode="edge")
    sat = np.zeros((padded.shape[0] + 1, padded.shape[1] + 1), dtype=np.float64)
    np.cumsum(padded, axis=0, out=sat[1:, 1:])
    np.cumsum(sat[1:, 1:], axis=1, out=sat[1:, 1:])
    h, w = img.shape
    s = size
    total = (
        sat[s : s + h, s : s + w]
        - sat[0:h, s : s + w]
        - sat[s : s + h, 0:w]
        + sat[0:h, 0:w]
    )
    return total / float(s * s)


def sobel_magnitude(img: np.ndarray) -> np.ndarray:
    """Gradient magnitude sqrt(Gx^2 + Gy^2) with the standard 3x3 kernels."""
    p = np.pad(img, 1, mode="edge")
    gx = (
        (p[:-2, 2:] + 2.0 * p[1:-1, 2:] + p[2:, 2:])
        - (p[:-2, :-2] + 2.0 * p[1:-1, :-2] + p[2:, :-2])
    )
    gy = (
        (p[2:, :-2] + 2.0 * p[2:, 1:-1] + p[2:, 2:])
        - (p[:-2, :-2] + 2.0 * p[:-2, 1:-1] + p[:-2, 2:])
    )
    return np.sqrt(gx * gx + gy * gy)


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _row_runs(row: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ext = np.zeros(row.shape[0] + 2, dtype=np.int8)
    ext[1:-1] = row
    d = np.diff(ext)
    return np.flatnonzero(d == 1), np.flatnonzero(d == -1)


def label_components(img: np.ndarray, connectivity: int = 8) -> tuple[np.ndarray, int]:
    """Label foreground components; labels are 1..N in row-major first-touch order.

    Run-length variant of the classic two-pass union-find: horizontal runs
    are the union-find items, so cost scales with the number of runs, not
    pixels.
    """
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    h, w = img.shape
    labels = np.zeros((h, w), dtype=np.int32)

    runs: list[tuple[int, int, int]] = []  # (row, start, end-exclusive)
    row_firsts = []  # index into runs of each row's first run
    for y in range(h):
        row_firsts.append(len(runs))
        starts, ends = _row_runs(img[y])
        for s, e in zip(starts.tolist(), ends.tolist()):
            runs.append((y, s, e))
    row_firsts.append(len(runs))

    uf = _UnionFind(len(runs))
    slack = 1 if connectivity == 8 else 0
    for y in range(1, h):
        i = row_firsts[y - 1]
        i_end = row_firsts[y]
        j = row_firsts[y]
        j_end = row_firsts[y + 1]
        while i < i_end and j < j_end:
            _, a, b = runs[i]
            _, c, d = runs[j]
            if c < b + slack and a < d + slack:
                uf.union(i, j)
            # advance whichever run ends first; the other may touch more runs
            if b <= d:
                i += 1
            else:
                j += 1

    next_label = 1
    root_to_label: dict[int, int] = {}
    for idx, (y, s, e) in enumerate(runs):
        root = uf.find(idx)
        lab = root_to_label.get(root)
        if lab is None:
            lab = next_label
            root_to_label[root] = lab
            next_label += 1
        labels[y, s:e] = lab
    return labels, next_label - 1
