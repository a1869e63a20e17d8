"""Turn a reachability result into a drawable MultiPolygon.

Two modes. "concave-grid" rasterizes the traversed portion of every arc
onto a square grid anchored at the origin node (cell edges land on
origin + k * cell in each axis, so the occupied set for a smaller budget
is always a subset of the set for a larger one), dilates, then traces
cell outlines into rectilinear rings. "convex-hull" wraps all reached
and frontier points in a single hull.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

from .errors import ConfigError
from .geometry import (
    METERS_PER_DEGREE,
    GeoPoint,
    MultiPolygon,
    Polygon,
    Ring,
)
from .graph import ReachResult, RoadGraph, nearest_node, reachable_set

MODES = ("concave-grid", "convex-hull")


@dataclass(frozen=True)
class IsochroneConfig:
    budget: float = 3600.0        # seconds
    cell_size: float = 1000.0     # meters
    mode: str = "concave-grid"
    snap_radius: float = 5000.0   # meters
    dilation: int = 1             # grid dilation rounds

    def __post_init__(self):
        if self.budget < 0 or not math.isfinite(self.budget):
            raise ConfigError(f"budget must be >= 0, got {self.budget}")
        if self.cell_size <= 0:
            raise ConfigError(f"cell_size must be > 0, got {self.cell_size}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.snap_radius <= 0:
            raise ConfigError(f"snap_radius must be > 0, got {self.snap_radius}")
        if self.dilation < 0:
            raise ConfigError(f"dilation must be >= 0, got {self.dilation}")


def compute_isochrone(g: RoadGraph, origin: GeoPoint,
                      cfg: IsochroneConfig) -> MultiPolygon:
    """Snap origin to the network, run the budget search, build the shape."""
    node = nearest_node(g, origin, cfg.snap_radius)
    reach = reachable_set(g, node, cfg.budget)
    return build_isochrone(reach, g, cfg)


def build_isochrone(reach: ReachResult, g: RoadGraph,
                    cfg: IsochroneConfig) -> MultiPolygon:
    if cfg.mode == "convex-hull":
        return _hull_polygon(reach, g, cfg)
    origin, cw, ch, cells = _grid_occupancy(reach, g, cfg)
    cells = _dilate(cells, cfg.dilation)
    shapes = _trace_cell_outlines(cells)
    polys = []
    for exterior, holes in shapes:
        ext_ring = _corner_ring(exterior, origin, cw, ch)
        hole_rings = tuple(_corner_ring(h, origin, cw, ch) for h in holes)
        polys.append(Polygon(exterior=ext_ring, holes=hole_rings))
    return MultiPolygon(polygons=tuple(polys))


# -- occupancy ---------------------------------------------------------------

def _grid_occupancy(reach: ReachResult, g: RoadGraph,
                    cfg: IsochroneConfig) -> tuple[GeoPoint, float, float, frozenset]:
    """Occupied cells: every cell crossed by the drivable portion of any
    arc out of a reached node (the whole arc if the far end arrives within
    budget, otherwise up to the time-remaining fraction).

    Returns (origin point, cell width deg, cell height deg, cells).
    """
    origin = g.point(reach.origin_node)
    ch = cfg.cell_size / METERS_PER_DEGREE
    # shrink of a degree of longitude at this latitude
    cw = cfg.cell_size / (METERS_PER_DEGREE * max(math.cos(math.radians(origin.lat)), 1e-12))

    cells: set[tuple[int, int]] = set()
    for nid, t in reach.arrivals.items():
        i = g.index_of[nid]
        pu = g.points[i]
        cells.add(_cell_of(pu, origin, cw, ch))
        for k in range(int(g.indptr[i]), int(g.indptr[i + 1])):
            w = float(g.weights[k])
            f = min((reach.budget - t) / w, 1.0) if w > 0 else 1.0
            if f <= 0.0:
                continue
            pv = g.points[int(g.targets[k])]
            end = GeoPoint(lon=pu.lon + (pv.lon - pu.lon) * f,
                           lat=pu.lat + (pv.lat - pu.lat) * f)
            cells.update(_cells_along(pu, end, origin, cw, ch))
    for p in reach.frontier_points:
        cells.add(_cell_of(p, origin, cw, ch))
    return origin, cw, ch, frozenset(cells)


def _cell_of(p: GeoPoint, origin: GeoPoint, cw: float, ch: float) -> tuple[int, int]:
    return (math.floor((p.lon - origin.lon) / cw),
            math.floor((p.lat - origin.lat) / ch))


def _cells_along(a: GeoPoint, b: GeoPoint, origin: GeoPoint,
                 cw: float, ch: float) -> Iterator[tuple[int, int]]:
    """Grid traversal from a to b: every cell the segment passes through."""
    x0 = (a.lon - origin.lon) / cw
    y0 = (a.lat - origin.lat) / ch
    x1 = (b.lon - origin.lon) / cw
    y1 = (b.lat - origin.lat) / ch
    i, j = math.floor(x0), math.floor(y0)
    ie, je = math.floor(x1), math.floor(y1)
    dx, dy = x1 - x0, y1 - y0
    step_i = 1 if dx > 0 else -1
    step_j = 1 if dy > 0 else -1
    # parameter t distance to the next vertical / horizontal cell boundary
    tmax_x = ((i + (step_i > 0)) - x0) / dx if dx != 0 else math.inf
    tmax_y = ((j + (step_j > 0)) - y0) / dy if dy != 0 else math.inf
    tdelta_x = abs(1.0 / dx) if dx != 0 else math.inf
    tdelta_y = abs(1.0 / dy) if dy != 0 else math.inf

    yield (i, j)
    remaining = abs(ie - i) + abs(je - j)
    while remaining > 0:
        if tmax_x < tmax_y:
            i += step_i
            tmax_x += tdelta_x
        else:
            j += step_j
            tmax_y += tdelta_y
        yield (i, j)
        remaining -= 1


def _dilate(cells: frozenset, rounds: int) -> frozenset:
    out = set(cells)
    for _ in range(rounds):
        grown = set(out)
        for (i, j) in out:
            grown.update((i + di, j + dj)
                         for di in (-1, 0, 1) for dj in (-1, 0, 1))
        out = grown
    return frozenset(out)


# -- contour tracing ---------------------------------------------------------

# direction vectors in corner space and their left-turn order
_LEFT = {(1, 0): (0, 1), (0, 1): (-1, 0), (-1, 0): (0, -1), (0, -1): (1, 0)}
_RIGHT = {v: k for k, v in _LEFT.items()}


def _boundary_edges(cells: frozenset) -> dict:
    """Directed edges between integer cell corners, occupied side on the
    left, keyed by start corner."""
    edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for (i, j) in cells:
        if (i, j - 1) not in cells:
            edges.setdefault((i, j), []).append((i + 1, j))
        if (i + 1, j) not in cells:
            edges.setdefault((i + 1, j), []).append((i + 1, j + 1))
        if (i, j + 1) not in cells:
            edges.setdefault((i + 1, j + 1), []).append((i, j + 1))
        if (i - 1, j) not in cells:
            edges.setdefault((i, j + 1), []).append((i, j))
    return edges


def _trace_cell_outlines(cells: frozenset) -> list[tuple[list, list]]:
    """Trace boundary edges into closed rings, then group holes under the
    exterior that contains them. Returns [(exterior_corners, [hole_corners])]
    sorted by the exterior's smallest corner; exteriors wind CCW, holes CW.
    """
    edges = _boundary_edges(cells)
    rings: list[list[tuple[int, int]]] = []
    for start in sorted(edges):
        while edges.get(start):
            ring = [start]
            prev_dir = None
            cur = start
            while True:
                outgoing = edges[cur]
                if prev_dir is None or len(outgoing) == 1:
                    nxt = min(outgoing)
                else:
                    # at a shared corner keep the occupied region on the left
                    for d in (_LEFT[prev_dir], prev_dir, _RIGHT[prev_dir]):
                        cand = (cur[0] + d[0], cur[1] + d[1])
                        if cand in outgoing:
                            nxt = cand
                            break
                    else:
                        nxt = min(outgoing)
                outgoing.remove(nxt)
                if not outgoing:
                    del edges[cur]
                prev_dir = (nxt[0] - cur[0], nxt[1] - cur[1])
                cur = nxt
                if cur == start:
                    break
                ring.append(cur)
            rings.append(_simplify_collinear(ring))

    exteriors = []
    holes = []
    for ring in rings:
        if _signed_area2(ring) > 0:
            exteriors.append(ring)
        else:
            holes.append(ring)

    result = [(ext, []) for ext in exteriors]
    for hole in holes:
        inner = _hole_probe(hole)
        best = None
        best_area = None
        for idx, (ext, _) in enumerate(result):
            if _corner_point_inside(inner, ext):
                a = _signed_area2(ext)
                if best is None or a < best_area:
                    best, best_area = idx, a
        if best is None:
            raise AssertionError("hole ring outside every exterior")
        result[best][1].append(hole)

    result.sort(key=lambda pair: min(pair[0]))
    for _, hs in result:
        hs.sort(key=min)
    return result


def _simplify_collinear(ring: list) -> list:
    out = []
    n = len(ring)
    for idx, c in enumerate(ring):
        p = ring[idx - 1]
        nx = ring[(idx + 1) % n]
        if (c[0] - p[0], c[1] - p[1]) != (nx[0] - c[0], nx[1] - c[1]):
            out.append(c)
    return out


def _signed_area2(ring: list) -> int:
    # twice the shoelace area, exact on integer corners
    total = 0
    n = len(ring)
    for idx in range(n):
        x1, y1 = ring[idx]
        x2, y2 = ring[(idx + 1) % n]
        total += x1 * y2 - x2 * y1
    return total


def _hole_probe(hole: list) -> tuple[float, float]:
    """Center of the empty cell just right of the hole's first edge (the
    hole interior, since holes wind CW with occupied cells on the left)."""
    a = hole[0]
    b = hole[1]
    d = (b[0] - a[0], b[1] - a[1])
    step = max(abs(d[0]), abs(d[1]))
    d = (d[0] // step, d[1] // step)
    r = _RIGHT[d]
    # cell whose corner set includes edge a->a+d, on the right side
    ci = a[0] + min(d[0], 0) + min(r[0], 0)
    cj = a[1] + min(d[1], 0) + min(r[1], 0)
    return (ci + 0.5, cj + 0.5)


def _corner_point_inside(p: tuple[float, float], ring: list) -> bool:
    """Crossing-number test for a half-integer point against an integer
    rectilinear ring. The horizontal ray never meets a horizontal edge."""
    x, y = p
    inside = False
    n = len(ring)
    for idx in range(n):
        x1, y1 = ring[idx]
        x2, y2 = ring[(idx + 1) % n]
        if x1 == x2 and min(y1, y2) < y < max(y1, y2) and x1 > x:
            inside = not inside
    return inside


def _corner_ring(corners: list, origin: GeoPoint, cw: float, ch: float) -> Ring:
    pts = [GeoPoint(lon=origin.lon + i * cw, lat=origin.lat + j * ch)
           for i, j in corners]
    pts.append(pts[0])
    return Ring(points=tuple(pts))


# -- convex hull -------------------------------------------------------------

def _hull_polygon(reach: ReachResult, g: RoadGraph, cfg: IsochroneConfig) -> MultiPolygon:
    pts = [g.point(n) for n in sorted(reach.arrivals)]
    pts.extend(reach.frontier_points)
    origin = g.point(reach.origin_node)
    hull = _convex_hull(sorted({(p.lon, p.lat) for p in pts}))
    if hull is None:
        ring = _inflated_segment(sorted({(p.lon, p.lat) for p in pts}), origin, cfg)
    else:
        ring = Ring(points=tuple(GeoPoint(lon=x, lat=y) for x, y in hull + [hull[0]]))
    return MultiPolygon(polygons=(Polygon(exterior=ring),))


def _convex_hull(pts: list) -> list | None:
    """Monotone chain, CCW; None when the points are collinear."""
    if len(pts) < 3:
        return None

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return None
    return hull


def _inflated_segment(pts: list, origin: GeoPoint, cfg: IsochroneConfig) -> Ring:
    """Collinear or single-point fallback: a cell_size-wide CCW rectangle
    around the extent, built in local meters so it stays square on screen."""
    klon = METERS_PER_DEGREE * max(math.cos(math.radians(origin.lat)), 1e-12)
    klat = METERS_PER_DEGREE
    m = [((x - origin.lon) * klon, (y - origin.lat) * klat) for x, y in pts]
    (x0, y0), (x1, y1) = min(m), max(m)
    h = cfg.cell_size / 2.0
    dx, dy = x1 - x0, y1 - y0
    norm = math.hypot(dx, dy)
    if norm == 0:
        ux, uy = 1.0, 0.0
    else:
        ux, uy = dx / norm, dy / norm
    px, py = -uy, ux                      # unit normal
    corners_m = [
        (x0 - ux * h - px * h, y0 - uy * h - py * h),
        (x1 + ux * h - px * h, y1 + uy * h - py * h),
        (x1 + ux * h + px * h, y1 + uy * h + py * h),
        (x0 - ux * h + px * h, y0 - uy * h + py * h),
    ]
    pts_deg = [GeoPoint(lon=origin.lon + mx / klon, lat=origin.lat + my / klat)
               for mx, my in corners_m]
    pts_deg.append(pts_deg[0])
    return Ring(points=tuple(pts_deg))
