#!/usr/bin/env python3
"""Time the compiled kernels against the pure-Python reference twins.

    python benchmarks/bench_kernels.py

Both backends are imported side by side, so one warmed-up process
produces every number. Without the compiled extension the script still
runs and reports only the reference timings.
"""

import math
import random
import time

import numpy as np

from driveshed import _reference

try:
    from driveshed import _speedups
except ImportError:
    _speedups = None


def best_of(fn, repeat=5):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def star_ring(verts, radius=2.0, wobble=0.7, seed=11):
    rnd = random.Random(seed)
    pts = []
    for i in range(verts):
        a = 2 * math.pi * i / verts
        r = radius * (1 - wobble / 2 + wobble * rnd.random())
        pts.append((r * math.cos(a), r * math.sin(a)))
    pts.append(pts[0])
    coords = np.array(pts, dtype=np.float64)
    offsets = np.array([0, len(pts)], dtype=np.intp)
    return coords, offsets


def lattice_csr(n, seconds=600.0):
    """CSR arrays for an n x n bidirectional lattice."""
    adjacency = [[] for _ in range(n * n)]
    for j in range(n):
        for i in range(n):
            nid = j * n + i
            if i + 1 < n:
                adjacency[nid].append(nid + 1)
                adjacency[nid + 1].append(nid)
            if j + 1 < n:
                adjacency[nid].append(nid + n)
                adjacency[nid + n].append(nid)
    indptr = np.zeros(n * n + 1, dtype=np.intp)
    np.cumsum([len(a) for a in adjacency], out=indptr[1:])
    targets = np.array([v for a in adjacency for v in a], dtype=np.intp)
    weights = np.full(len(targets), seconds)
    return indptr, targets, weights


def workloads():
    coords, offsets = star_ring(64)
    rnd = random.Random(7)
    queries = [(rnd.uniform(-2.5, 2.5), rnd.uniform(-2.5, 2.5))
               for _ in range(5000)]

    def pip(impl):
        hits = 0
        for x, y in queries:
            hits += impl.point_in_rings(coords, offsets, x, y)
        return hits

    quads = [tuple(rnd.uniform(-3, 3) for _ in range(8)) for _ in range(50000)]

    def segs(impl):
        hits = 0
        for q in quads:
            hits += impl.segments_intersect(*q)
        return hits

    ca, oa = star_ring(200, seed=3)
    cb, ob = star_ring(200, seed=4)
    cb = cb + 0.8    # partial overlap keeps the scan honest

    def cross(impl):
        for _ in range(30):
            impl.rings_cross(ca, oa, cb, ob)
            impl.any_vertex_inside(ca, oa, cb, ob)

    indptr, targets, weights = lattice_csr(120)

    def dijkstra(impl):
        impl.dijkstra_budget(indptr, targets, weights, 0, 600.0 * 150)

    return [
        ("point_in_rings      (5k queries, 64-gon)", pip),
        ("segments_intersect  (50k pairs)", segs),
        ("ring scans          (30 x 200-gon pairs)", cross),
        ("dijkstra_budget     (14,400-node lattice)", dijkstra),
    ]


def main():
    rows = []
    for label, work in workloads():
        pure = best_of(lambda: work(_reference))
        if _speedups is not None:
            fast = best_of(lambda: work(_speedups))
            rows.append((label, pure, fast, pure / fast))
        else:
            rows.append((label, pure, None, None))

    print(f"{'kernel':44}  {'pure':>9}  {'compiled':>9}  {'speedup':>7}")
    for label, pure, fast, ratio in rows:
        if fast is None:
            print(f"{label:44}  {pure * 1e3:7.1f}ms  {'-':>9}  {'-':>7}")
        else:
            print(f"{label:44}  {pure * 1e3:7.1f}ms  {fast * 1e3:7.1f}ms  {ratio:6.1f}x")
    if _speedups is None:
        print("\ncompiled extension not built; showing reference only")


if __name__ == "__main__":
    main()
