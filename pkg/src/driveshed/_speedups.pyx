# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.

Twin of ``driveshed._reference`` — same signatures, arithmetic kept
expression-for-expression identical so both backends agree bit-for-bit.
Compiled with -ffp-contract=off so the C compiler cannot fuse the orientation
products into FMA and change rounding relative to CPython.
"""

import numpy as np

BACKEND = "compiled"


def point_in_rings(double[:, ::1] coords, Py_ssize_t[::1] offsets, double px, double py):
    cdef Py_ssize_t nr = offsets.shape[0] - 1
    cdef Py_ssize_t r, i
    cdef double x1, y1, x2, y2, cross, xint
    cdef int crossings = 0
    for r in range(nr):
        for i in range(offsets[r], offsets[r + 1] - 1):
            x1 = coords[i, 0]
            y1 = coords[i, 1]
            x2 = coords[i + 1, 0]
            y2 = coords[i + 1, 1]
            cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
            if cross == 0.0:
                if min(x1, x2) <= px <= max(x1, x2) and min(y1, y2) <= py <= max(y1, y2):
                    return 2
            if (y1 > py) != (y2 > py):
                xint = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
                if px < xint:
                    crossings += 1
    return crossings & 1


cdef inline int _orient(double px, double py, double qx, double qy,
                        double rx, double ry) nogil:
    cdef double v = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    if v > 0.0:
        return 1
    if v < 0.0:
        return -1
    return 0


cdef inline bint _on_segment(double px, double py, double qx, double qy,
                             double rx, double ry) nogil:
    return (min(px, qx) <= rx <= max(px, qx)
            and min(py, qy) <= ry <= max(py, qy))


cdef bint _segments_intersect(double ax, double ay, double bx, double by,
                              double cx, double cy, double dx, double dy) nogil:
    cdef int o1 = _orient(ax, ay, bx, by, cx, cy)
    cdef int o2 = _orient(ax, ay, bx, by, dx, dy)
    cdef int o3 = _orient(cx, cy, dx, dy, ax, ay)
    cdef int o4 = _orient(cx, cy, dx, dy, bx, by)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_segment(ax, ay, bx, by, cx, cy):
        return True
    if o2 == 0 and _on_segment(ax, ay, bx, by, dx, dy):
        return True
    if o3 == 0 and _on_segment(cx, cy, dx, dy, ax, ay):
        return True
    if o4 == 0 and _on_segment(cx, cy, dx, dy, bx, by):
        return True
    return False


def segments_intersect(double ax, double ay, double bx, double by,
                       double cx, double cy, double dx, double dy):
    return _segments_intersect(ax, ay, bx, by, cx, cy, dx, dy)


def rings_cross(double[:, ::1] coords_a, Py_ssize_t[::1] offsets_a,
                double[:, ::1] coords_b, Py_ssize_t[::1] offsets_b):
    cdef Py_ssize_t nra = offsets_a.shape[0] - 1
    cdef Py_ssize_t nrb = offsets_b.shape[0] - 1
    cdef Py_ssize_t ra, rb, i, j
    cdef double x1, y1, x2, y2, x3, y3, x4, y4
    cdef double exmin, exmax, eymin, eymax
    for ra in range(nra):
        for i in range(offsets_a[ra], offsets_a[ra + 1] - 1):
            x1 = coords_a[i, 0]
            y1 = coords_a[i, 1]
            x2 = coords_a[i + 1, 0]
            y2 = coords_a[i + 1, 1]
            exmin = min(x1, x2)
            exmax = max(x1, x2)
            eymin = min(y1, y2)
            eymax = max(y1, y2)
            for rb in range(nrb):
                for j in range(offsets_b[rb], offsets_b[rb + 1] - 1):
                    x3 = coords_b[j, 0]
                    y3 = coords_b[j, 1]
                    x4 = coords_b[j + 1, 0]
                    y4 = coords_b[j + 1, 1]
                    if max(x3, x4) < exmin or min(x3, x4) > exmax:
                        continue
                    if max(y3, y4) < eymin or min(y3, y4) > eymax:
                        continue
                    if _segments_intersect(x1, y1, x2, y2, x3, y3, x4, y4):
                        return True
    return False


def any_vertex_inside(double[:, ::1] coords_q, Py_ssize_t[::1] offsets_q,
                      double[:, ::1] coords_p, Py_ssize_t[::1] offsets_p):
    cdef Py_ssize_t nr = offsets_q.shape[0] - 1
    cdef Py_ssize_t r, i
    for r in range(nr):
        for i in range(offsets_q[r], offsets_q[r + 1] - 1):
            if point_in_rings(coords_p, offsets_p, coords_q[i, 0], coords_q[i, 1]):
                return True
    return False


cdef inline void _heap_push(double[::1] hd, Py_ssize_t[::1] hv,
                            Py_ssize_t* size, double d, Py_ssize_t v) nogil:
    cdef Py_ssize_t i = size[0]
    cdef Py_ssize_t parent
    size[0] += 1
    while i > 0:
        parent = (i - 1) >> 1
        if hd[parent] <= d:
            break
        hd[i] = hd[parent]
        hv[i] = hv[parent]
        i = parent
    hd[i] = d
    hv[i] = v


cdef inline void _heap_pop(double[::1] hd, Py_ssize_t[::1] hv,
                           Py_ssize_t* size, double* d, Py_ssize_t* v) nogil:
    cdef double last_d
    cdef Py_ssize_t last_v, i, child, n
    d[0] = hd[0]
    v[0] = hv[0]
    size[0] -= 1
    n = size[0]
    if n == 0:
        return
    last_d = hd[n]
    last_v = hv[n]
    i = 0
    child = 1
    while child < n:
        if child + 1 < n and hd[child + 1] < hd[child]:
            child += 1
        if hd[child] >= last_d:
            break
        hd[i] = hd[child]
        hv[i] = hv[child]
        i = child
        child = 2 * i + 1
    hd[i] = last_d
    hv[i] = last_v


def dijkstra_budget(Py_ssize_t[::1] indptr, Py_ssize_t[::1] targets,
                    double[::1] weights, Py_ssize_t source, double budget):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t cap = weights.shape[0] + 2
    dist_arr = np.full(n, np.inf)
    heap_d = np.empty(cap)
    heap_v = np.empty(cap, dtype=np.intp)
    cdef double[::1] dist = dist_arr
    cdef double[::1] hd = heap_d
    cdef Py_ssize_t[::1] hv = heap_v
    cdef Py_ssize_t size = 0
    cdef Py_ssize_t u, v, k
    cdef double d, nd
    dist[source] = 0.0
    _heap_push(hd, hv, &size, 0.0, source)
    while size > 0:
        _heap_pop(hd, hv, &size, &d, &u)
        if d > dist[u]:
            continue
        for k in range(indptr[u], indptr[u + 1]):
            v = targets[k]
            nd = d + weights[k]
            if nd <= budget and nd < dist[v]:
                dist[v] = nd
                _heap_push(hd, hv, &size, nd, v)
    return dist_arr
