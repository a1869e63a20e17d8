"""The compiled and pure kernels must be interchangeable bit for bit."""

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from driveshed import _reference, kernels

try:
    from driveshed import _speedups
except ImportError:
    _speedups = None

needs_ext = pytest.mark.skipif(_speedups is None, reason="extension not built")


def pack_rings(rings):
    coords = np.array([pt for ring in rings for pt in ring], dtype=np.float64)
    offsets = np.zeros(len(rings) + 1, dtype=np.intp)
    np.cumsum([len(r) for r in rings], out=offsets[1:])
    return coords, offsets


def random_ring(rnd, n=8):
    import math
    cx, cy = rnd.uniform(-2, 2), rnd.uniform(-2, 2)
    angles = sorted(rnd.uniform(0, 2 * math.pi) for _ in range(n))
    pts = [(cx + rnd.uniform(0.5, 2) * math.cos(a),
            cy + rnd.uniform(0.5, 2) * math.sin(a)) for a in angles]
    return pts + [pts[0]]


def test_backend_is_reported():
    assert kernels.BACKEND in ("compiled", "pure")
    assert _reference.BACKEND == "pure"


@needs_ext
def test_dispatch_prefers_compiled():
    if os.environ.get("DRIVESHED_PURE"):
        pytest.skip("pure backend forced via environment")
    assert kernels.BACKEND == "compiled"


def test_pure_env_forces_reference_backend(tmp_path):
    code = ("import driveshed.kernels as k; print(k.BACKEND)")
    env = dict(os.environ, DRIVESHED_PURE="1")
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure"


@needs_ext
class TestBackendAgreement:
    def test_point_in_rings(self):
        rnd = random.Random(5150)
        for _ in range(300):
            rings = [random_ring(rnd, rnd.randint(3, 10))
                     for _ in range(rnd.randint(1, 3))]
            coords, offsets = pack_rings(rings)
            for _ in range(20):
                px, py = rnd.uniform(-5, 5), rnd.uniform(-5, 5)
                assert (_speedups.point_in_rings(coords, offsets, px, py)
                        == _reference.point_in_rings(coords, offsets, px, py))
            # boundary points too
            for (vx, vy) in rings[0][:-1]:
                assert (_speedups.point_in_rings(coords, offsets, vx, vy)
                        == _reference.point_in_rings(coords, offsets, vx, vy))

    def test_segments(self):
        rnd = random.Random(51)
        for _ in range(4000):
            vals = [rnd.uniform(-3, 3) for _ in range(8)]
            if rnd.random() < 0.3:
                vals = [round(v * 4) / 4 for v in vals]
            assert (_speedups.segments_intersect(*vals)
                    == _reference.segments_intersect(*vals))

    def test_rings_cross_and_vertex_inside(self):
        rnd = random.Random(52)
        for _ in range(200):
            a = [random_ring(rnd, 6)]
            b = [random_ring(rnd, 6)]
            ca, oa = pack_rings(a)
            cb, ob = pack_rings(b)
            assert (_speedups.rings_cross(ca, oa, cb, ob)
                    == _reference.rings_cross(ca, oa, cb, ob))
            assert (_speedups.any_vertex_inside(ca, oa, cb, ob)
                    == _reference.any_vertex_inside(ca, oa, cb, ob))

    def test_dijkstra_bitwise(self):
        rnd = random.Random(53)
        for _ in range(200):
            n = rnd.randint(2, 30)
            arcs = [[] for _ in range(n)]
            for _ in range(rnd.randint(1, 4 * n)):
                u, v = rnd.randrange(n), rnd.randrange(n)
                arcs[u].append((v, rnd.uniform(0.1, 100.0)))
            indptr = np.zeros(n + 1, dtype=np.intp)
            np.cumsum([len(a) for a in arcs], out=indptr[1:])
            targets = np.array([v for a in arcs for v, _ in a], dtype=np.intp)
            weights = np.array([w for a in arcs for _, w in a], dtype=np.float64)
            budget = rnd.uniform(0, 300)
            fast = _speedups.dijkstra_budget(indptr, targets, weights, 0, budget)
            slow = _reference.dijkstra_budget(indptr, targets, weights, 0, budget)
            assert np.array_equal(fast, slow), "arrival arrays diverged"
