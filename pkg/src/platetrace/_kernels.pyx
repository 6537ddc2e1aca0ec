# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled kernel backend: the hot inner loops of the raster pipeline.

Same contracts as ``platetrace._kernels_py``; replicate borders everywhere.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt
from libc.stdlib cimport free, malloc

cnp.import_array()


cdef inline Py_ssize_t _clamp(Py_ssize_t v, Py_ssize_t lo, Py_ssize_t hi) nogil:
    if v < lo:
        return lo
    if v > hi:
        return hi
    return v


def median_filter(double[:, ::1] img, int radius):
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    cdef int k = 2 * radius + 1
    cdef int n = k * k
    cdef Py_ssize_t y, x, yy, xx
    cdef int i, j
    cdef double v
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    cdef double* buf = <double*> malloc(n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        with nogil:
            for y in range(h):
                for x in range(w):
                    i = 0
                    for yy in range(y - radius, y + radius + 1):
                        for xx in range(x - radius, x + radius + 1):
                            v = img[_clamp(yy, 0, h - 1), _clamp(xx, 0, w - 1)]
                            # insertion sort keeps buf ordered
                            j = i
                            while j > 0 and buf[j - 1] > v:
                                buf[j] = buf[j - 1]
                                j -= 1
                            buf[j] = v
                            i += 1
                    out[y, x] = buf[n // 2]
    finally:
        free(buf)
    return out_arr


def box_filter(double[:, ::1] img, int size):
    """Separable sliding-window mean; window spans y-(size-1)//2 .. y+size//2."""
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    cdef int top = (size - 1) // 2
    cdef Py_ssize_t y, x, yy, xx, add, sub
    cdef double acc
    cdef double denom = <double> size * <double> size
    row_arr = np.empty((h, w), dtype=np.float64)
    col_arr = np.zeros(w, dtype=np.float64)
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] rows = row_arr
    cdef double[::1] colsum = col_arr
    cdef double[:, ::1] out = out_arr
    with nogil:
        # horizontal pass: sliding sum along each row
        for y in range(h):
            acc = 0.0
            for xx in range(-top, size - top):
                acc += img[y, _clamp(xx, 0, w - 1)]
            rows[y, 0] = acc
            for x in range(1, w):
                acc += img[y, _clamp(x - top + size - 1, 0, w - 1)] \
                    - img[y, _clamp(x - top - 1, 0, w - 1)]
                rows[y, x] = acc
        # vertical pass: one running sum per column, slid down the rows
        for yy in range(-top, size - top):
            sub = _clamp(yy, 0, h - 1)
            for x in range(w):
                colsum[x] += rows[sub, x]
        for x in range(w):
            out[0, x] = colsum[x] / denom
        for y in range(1, h):
            add = _clamp(y - top + size - 1, 0, h - 1)
            sub = _clamp(y - top - 1, 0, h - 1)
            for x in range(w):
                colsum[x] += rows[add, x] - rows[sub, x]
                out[y, x] = colsum[x] / denom
    return out_arr


def sobel_magnitude(double[:, ::1] img):
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    cdef Py_ssize_t y, x, ym, yp, xm, xp
    cdef double gx, gy
    out_arr = np.empty((h, w), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    with nogil:
        for y in range(h):
            ym = _clamp(y - 1, 0, h - 1)
            yp = _clamp(y + 1, 0, h - 1)
            for x in range(w):
                xm = _clamp(x - 1, 0, w - 1)
                xp = _clamp(x + 1, 0, w - 1)
                gx = (img[ym, xp] + 2.0 * img[y, xp] + img[yp, xp]) \
                    - (img[ym, xm] + 2.0 * img[y, xm] + img[yp, xm])
                gy = (img[yp, xm] + 2.0 * img[yp, x] + img[yp, xp]) \
                    - (img[ym, xm] + 2.0 * img[ym, x] + img[ym, xp])
                out[y, x] = sqrt(gx * gx + gy * gy)
    return out_arr


cdef Py_ssize_t _find(cnp.int32_t* parent, Py_ssize_t x) nogil:
    cdef Py_ssize_t root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = <cnp.int32_t> root
        x = nxt
    return root


cdef void _union(cnp.int32_t* parent, Py_ssize_t a, Py_ssize_t b) nogil:
    cdef Py_ssize_t ra = _find(parent, a), rb = _find(parent, b)
    if ra == rb:
        return
    if rb < ra:
        ra, rb = rb, ra
    parent[rb] = <cnp.int32_t> ra


def label_components(cnp.uint8_t[:, ::1] img, int connectivity=8):
    """Two-pass union-find labeling; labels 1..N in row-major first-touch order."""
    if connectivity != 4 and connectivity != 8:
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    cdef Py_ssize_t h = img.shape[0], w = img.shape[1]
    cdef Py_ssize_t y, x, best, root
    cdef Py_ssize_t n_prov = 0
    cdef bint eight = connectivity == 8
    labels_arr = np.zeros((h, w), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] labels = labels_arr
    # at most ceil(h*w/2) provisional labels for 4/8-connectivity, +1 for base
    cdef Py_ssize_t cap = h * w // 2 + 2
    cdef cnp.int32_t* parent = <cnp.int32_t*> malloc(cap * sizeof(cnp.int32_t))
    cdef cnp.int32_t* remap = NULL
    cdef cnp.int32_t n_final = 0
    if parent == NULL:
        raise MemoryError()
    try:
        with nogil:
            # pass 1: provisional labels from already-scanned neighbors
            for y in range(h):
                for x in range(w):
                    if img[y, x] == 0:
                        continue
                    best = 0
                    if x > 0 and labels[y, x - 1] != 0:
                        best = labels[y, x - 1]
                    if y > 0:
                        if labels[y - 1, x] != 0:
                            if best == 0:
                                best = labels[y - 1, x]
                            else:
                                _union(parent, best, labels[y - 1, x])
                        if eight:
                            if x > 0 and labels[y - 1, x - 1] != 0:
                                if best == 0:
                                    best = labels[y - 1, x - 1]
                                else:
                                    _union(parent, best, labels[y - 1, x - 1])
                            if x < w - 1 and labels[y - 1, x + 1] != 0:
                                if best == 0:
                                    best = labels[y - 1, x + 1]
                                else:
                                    _union(parent, best, labels[y - 1, x + 1])
                    if best == 0:
                        n_prov += 1
                        parent[n_prov] = <cnp.int32_t> n_prov
                        best = n_prov
                    labels[y, x] = <cnp.int32_t> best
            # pass 2: resolve and renumber by first occurrence
            remap = <cnp.int32_t*> malloc((n_prov + 1) * sizeof(cnp.int32_t))
            if remap != NULL:
                for y in range(n_prov + 1):
                    remap[y] = 0
                for y in range(h):
                    for x in range(w):
                        if labels[y, x] == 0:
                            continue
                        root = _find(parent, labels[y, x])
                        if remap[root] == 0:
                            n_final += 1
                            remap[root] = n_final
                        labels[y, x] = remap[root]
        if remap == NULL:
            raise MemoryError()
    finally:
        free(parent)
        if remap != NULL:
            free(remap)
    return labels_arr, int(n_final)
