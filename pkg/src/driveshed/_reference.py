"""Pure-Python kernels.

Twin of the compiled ``_speedups`` extension: same functions, same
signatures, and arithmetic written expression-for-expression identically so
both backends agree bit-for-bit. ``driveshed.kernels`` picks whichever is
available at import time.

Conventions shared by both backends:

* a polygon is passed as packed rings: ``coords`` is an (N, 2) float64
  array holding every ring's vertices concatenated (each ring closed,
  first vertex repeated at the end), and ``offsets`` is an int64 array of
  ring start indices with a trailing N;
* ``point_in_rings`` returns 2 when the point lies exactly on a ring edge,
  otherwise the even-odd crossing parity over all rings (1 inside,
  0 outside) — holes need no special casing because parity flips twice.
"""

from __future__ import annotations

import heapq

import numpy as np

BACKEND = "pure"


def point_in_rings(coords, offsets, px: float, py: float) -> int:
    xs = coords[:, 0].tolist()
    ys = coords[:, 1].tolist()
    offs = offsets.tolist()
    crossings = 0
    for r in range(len(offs) - 1):
        for i in range(offs[r], offs[r + 1] - 1):
            x1 = xs[i]
            y1 = ys[i]
            x2 = xs[i + 1]
            y2 = ys[i + 1]
            cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
            if cross == 0.0:
                if min(x1, x2) <= px <= max(x1, x2) and min(y1, y2) <= py <= max(y1, y2):
                    return 2
            if (y1 > py) != (y2 > py):
                xint = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
                if px < xint:
                    crossings += 1
    return crossings & 1


def _orient(px, py, qx, qy, rx, ry) -> int:
    v = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    if v > 0.0:
        return 1
    if v < 0.0:
        return -1
    return 0


def _on_segment(px, py, qx, qy, rx, ry) -> bool:
    # assumes r collinear with p-q
    return min(px, qx) <= rx <= max(px, qx) and min(py, qy) <= ry <= max(py, qy)


def segments_intersect(ax, ay, bx, by, cx, cy, dx, dy) -> bool:
    o1 = _orient(ax, ay, bx, by, cx, cy)
    o2 = _orient(ax, ay, bx, by, dx, dy)
    o3 = _orient(cx, cy, dx, dy, ax, ay)
    o4 = _orient(cx, cy, dx, dy, bx, by)
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


def rings_cross(coords_a, offsets_a, coords_b, offsets_b) -> bool:
    axs = coords_a[:, 0].tolist()
    ays = coords_a[:, 1].tolist()
    bxs = coords_b[:, 0].tolist()
    bys = coords_b[:, 1].tolist()
    offs_a = offsets_a.tolist()
    offs_b = offsets_b.tolist()
    for ra in range(len(offs_a) - 1):
        for i in range(offs_a[ra], offs_a[ra + 1] - 1):
            x1 = axs[i]
            y1 = ays[i]
            x2 = axs[i + 1]
            y2 = ays[i + 1]
            exmin = min(x1, x2)
            exmax = max(x1, x2)
            eymin = min(y1, y2)
            eymax = max(y1, y2)
            for rb in range(len(offs_b) - 1):
                for j in range(offs_b[rb], offs_b[rb + 1] - 1):
                    x3 = bxs[j]
                    y3 = bys[j]
                    x4 = bxs[j + 1]
                    y4 = bys[j + 1]
                    if max(x3, x4) < exmin or min(x3, x4) > exmax:
                        continue
                    if max(y3, y4) < eymin or min(y3, y4) > eymax:
                        continue
                    if segments_intersect(x1, y1, x2, y2, x3, y3, x4, y4):
                        return True
    return False


def any_vertex_inside(coords_q, offsets_q, coords_p, offsets_p) -> bool:
    n = coords_q.shape[0]
    offs = offsets_q.tolist()
    for r in range(len(offs) - 1):
        # last vertex of each ring duplicates the first; skip it
        for i in range(offs[r], offs[r + 1] - 1):
            if point_in_rings(coords_p, offsets_p, float(coords_q[i, 0]), float(coords_q[i, 1])):
                return True
    del n
    return False


def dijkstra_budget(indptr, targets, weights, source: int, budget: float):
    """Arrival times from ``source`` over a CSR adjacency, truncated at budget.

    Returns a float64 array with math.inf for nodes not reachable within
    ``budget``.
    """
    n = len(indptr) - 1
    dist = np.full(n, np.inf)
    ip = indptr.tolist()
    tg = targets.tolist()
    wt = weights.tolist()
    dist_l = dist.tolist()
    dist_l[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist_l[u]:
            continue
        for k in range(ip[u], ip[u + 1]):
            v = tg[k]
            nd = d + wt[k]
            if nd <= budget and nd < dist_l[v]:
                dist_l[v] = nd
                heapq.heappush(heap, (nd, v))
    return np.array(dist_l)
