# Compiled twins of the polygon kernels in _polyops_py.py.
# Same signatures; see that module for the reference semantics.

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"


def area_centroid(cnp.ndarray[cnp.float64_t, ndim=2] verts):
    cdef Py_ssize_t n = verts.shape[0]
    cdef Py_ssize_t i, j
    cdef double a = 0.0, cx = 0.0, cy = 0.0, cr
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        cr = verts[i, 0] * verts[j, 1] - verts[j, 0] * verts[i, 1]
        a += cr
        cx += (verts[i, 0] + verts[j, 0]) * cr
        cy += (verts[i, 1] + verts[j, 1]) * cr
    a *= 0.5
    if a == 0.0:
        return 0.0, 0.0, 0.0
    return a, cx / (6.0 * a), cy / (6.0 * a)


def support(cnp.ndarray[cnp.float64_t, ndim=2] verts, double ux, double uy):
    cdef Py_ssize_t n = verts.shape[0]
    cdef Py_ssize_t i
    cdef double best = verts[0, 0] * ux + verts[0, 1] * uy
    cdef double v
    for i in range(1, n):
        v = verts[i, 0] * ux + verts[i, 1] * uy
        if v > best:
            best = v
    return best


def supports(cnp.ndarray[cnp.float64_t, ndim=2] verts,
             cnp.ndarray[cnp.float64_t, ndim=2] dirs):
    cdef Py_ssize_t m = dirs.shape[0]
    cdef Py_ssize_t n = verts.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(m)
    cdef Py_ssize_t i, k
    cdef double best, v, ux, uy
    for k in range(m):
        ux = dirs[k, 0]
        uy = dirs[k, 1]
        best = verts[0, 0] * ux + verts[0, 1] * uy
        for i in range(1, n):
            v = verts[i, 0] * ux + verts[i, 1] * uy
            if v > best:
                best = v
        out[k] = best
    return out


def clip_halfplane(cnp.ndarray[cnp.float64_t, ndim=2] verts,
                   double nx, double ny, double off):
    cdef Py_ssize_t n = verts.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] d = np.empty(n)
    cdef Py_ssize_t i, j, k = 0
    cdef int all_in = 1, all_out = 1
    cdef double di, dj, t
    for i in range(n):
        di = verts[i, 0] * nx + verts[i, 1] * ny - off
        d[i] = di
        if di > 0.0:
            all_in = 0
        if di < 0.0:
            all_out = 0
    if all_in:
        return verts
    if all_out:
        return np.empty((0, 2))
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((2 * n, 2))
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        di = d[i]
        dj = d[j]
        if di <= 0.0:
            out[k, 0] = verts[i, 0]
            out[k, 1] = verts[i, 1]
            k += 1
            if dj > 0.0:
                t = di / (di - dj)
                out[k, 0] = verts[i, 0] + t * (verts[j, 0] - verts[i, 0])
                out[k, 1] = verts[i, 1] + t * (verts[j, 1] - verts[i, 1])
                k += 1
        elif dj < 0.0:
            t = di / (di - dj)
            out[k, 0] = verts[i, 0] + t * (verts[j, 0] - verts[i, 0])
            out[k, 1] = verts[i, 1] + t * (verts[j, 1] - verts[i, 1])
            k += 1
    if k < 3:
        return np.empty((0, 2))
    return out[:k].copy()


def cap_area(cnp.ndarray[cnp.float64_t, ndim=2] verts,
             double nx, double ny, double off):
    # Area of {<n, x> >= off} without materializing the clipped polygon.
    cdef cnp.ndarray[cnp.float64_t, ndim=2] cap = clip_halfplane(verts, -nx, -ny, -off)
    if cap.shape[0] == 0:
        return 0.0
    return area_centroid(cap)[0]


def polar_vertices(cnp.ndarray[cnp.float64_t, ndim=2] verts, double zx, double zy):
    cdef Py_ssize_t n = verts.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, 2))
    cdef Py_ssize_t i, j
    cdef double ax, ay, bx, by, det
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        ax = verts[i, 0] - zx
        ay = verts[i, 1] - zy
        bx = verts[j, 0] - zx
        by = verts[j, 1] - zy
        det = ax * by - ay * bx
        out[i, 0] = (by - ay) / det
        out[i, 1] = (ax - bx) / det
    return out


def shift_vertices(cnp.ndarray[cnp.float64_t, ndim=2] verts, double zx, double zy):
    cdef Py_ssize_t n = verts.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((n, 2))
    cdef Py_ssize_t i
    cdef double denom
    for i in range(n):
        denom = 1.0 - (verts[i, 0] * zx + verts[i, 1] * zy)
        out[i, 0] = verts[i, 0] / denom
        out[i, 1] = verts[i, 1] / denom
    return out
