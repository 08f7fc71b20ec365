# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid kernels.  Pure-numpy equivalents live in ``_fallback``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()


cdef inline double _cross(double ax, double ay, double bx, double by,
                          double px, double py) nogil:
    return (bx - ax) * (py - ay) - (px - ax) * (by - ay)


def winding_numbers(double[:, ::1] poly, double[:, ::1] pts):
    """Winding number of the closed polygon ``poly`` around each row of ``pts``."""
    cdef Py_ssize_t n = poly.shape[0], m = pts.shape[0]
    cdef Py_ssize_t i, j, jn
    cdef double px, py, ax, ay, bx, by
    cdef long w
    out = np.zeros(m, dtype=np.int64)
    cdef long long[::1] res = out
    with nogil:
        for i in range(m):
            px = pts[i, 0]
            py = pts[i, 1]
            w = 0
            for j in range(n):
                jn = j + 1
                if jn == n:
                    jn = 0
                ax = poly[j, 0]
                ay = poly[j, 1]
                bx = poly[jn, 0]
                by = poly[jn, 1]
                if ay <= py:
                    if by > py and _cross(ax, ay, bx, by, px, py) > 0:
                        w += 1
                elif by <= py and _cross(ax, ay, bx, by, px, py) < 0:
                    w -= 1
            res[i] = w
    return out


def polygon_crossings(double[:, ::1] poly, Py_ssize_t limit=-1):
    """Index pairs (i, j), i < j, of non-adjacent edges that cross properly.

    Edge i joins vertex i to vertex i+1 (cyclically).  Stops after ``limit``
    pairs when ``limit`` is non-negative.
    """
    cdef Py_ssize_t n = poly.shape[0]
    cdef Py_ssize_t i, j, inx, jnx
    cdef double ax, ay, bx, by, cx, cy, dx, dy
    cdef double o1, o2, o3, o4
    cdef double minx0, maxx0, miny0, maxy0
    found = []
    for i in range(n):
        inx = i + 1 if i + 1 < n else 0
        ax = poly[i, 0]; ay = poly[i, 1]
        bx = poly[inx, 0]; by = poly[inx, 1]
        minx0 = ax if ax < bx else bx
        maxx0 = bx if ax < bx else ax
        miny0 = ay if ay < by else by
        maxy0 = by if ay < by else ay
        for j in range(i + 2, n):
            if i == 0 and j == n - 1:
                continue
            jnx = j + 1 if j + 1 < n else 0
            cx = poly[j, 0]; cy = poly[j, 1]
            dx = poly[jnx, 0]; dy = poly[jnx, 1]
            if (cx < minx0 and dx < minx0) or (cx > maxx0 and dx > maxx0):
                continue
            if (cy < miny0 and dy < miny0) or (cy > maxy0 and dy > maxy0):
                continue
            o1 = _cross(ax, ay, bx, by, cx, cy)
            o2 = _cross(ax, ay, bx, by, dx, dy)
            if o1 * o2 >= 0:
                continue
            o3 = _cross(cx, cy, dx, dy, ax, ay)
            o4 = _cross(cx, cy, dx, dy, bx, by)
            if o3 * o4 >= 0:
                continue
            found.append((i, j))
            if 0 <= limit <= len(found):
                return np.asarray(found, dtype=np.int64).reshape(-1, 2)
    return np.asarray(found, dtype=np.int64).reshape(-1, 2)


def nearest_sample(double[:, ::1] samples, double[:, ::1] pts):
    """Distance from each point to its nearest sample, and that sample's index."""
    cdef Py_ssize_t n = samples.shape[0], m = pts.shape[0]
    cdef Py_ssize_t i, j, best
    cdef double px, py, ddx, ddy, d2, bd2
    dist = np.empty(m, dtype=np.float64)
    idx = np.empty(m, dtype=np.int64)
    cdef double[::1] dv = dist
    cdef long long[::1] iv = idx
    with nogil:
        for i in range(m):
            px = pts[i, 0]
            py = pts[i, 1]
            bd2 = 1e308
            best = 0
            for j in range(n):
                ddx = samples[j, 0] - px
                ddy = samples[j, 1] - py
                d2 = ddx * ddx + ddy * ddy
                if d2 < bd2:
                    bd2 = d2
                    best = j
            dv[i] = sqrt(bd2)
            iv[i] = best
    return dist, idx
