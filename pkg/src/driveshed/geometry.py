"""Planar lon/lat geometry: points, rings, polygons, and the predicates the
routing and county-intersection layers are built on.

All geometry is computed in raw WGS84 degree space treated as planar. At
county scale the distortion is small and it keeps every predicate exact and
cheap; distances that must be metric go through :func:`great_circle_m`.
Points exactly on a polygon edge count as inside — intersection tests stay
conservative and never drop a county the query region merely touches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels

EARTH_RADIUS_M = 6_371_000.0
METERS_PER_DEGREE = EARTH_RADIUS_M * math.pi / 180.0


@dataclass(frozen=True)
class GeoPoint:
    """A WGS84 coordinate, longitude first."""

    lon: float
    lat: float

    def __post_init__(self):
        object.__setattr__(self, "lon", float(self.lon))
        object.__setattr__(self, "lat", float(self.lat))
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise ValueError(f"longitude {self.lon} outside [-180, 180]")


@dataclass(frozen=True)
class BBox:
    min_lon: float
    min_lat: float
    max_lon: float
    max_lat: float

    def __post_init__(self):
        if self.min_lon > self.max_lon or self.min_lat > self.max_lat:
            raise ValueError("bbox min exceeds max")

    def intersects(self, other: "BBox") -> bool:
        return (self.min_lon <= other.max_lon and other.min_lon <= self.max_lon
                and self.min_lat <= other.max_lat and other.min_lat <= self.max_lat)

    def contains(self, p: GeoPoint) -> bool:
        return (self.min_lon <= p.lon <= self.max_lon
                and self.min_lat <= p.lat <= self.max_lat)

    def merge(self, other: "BBox") -> "BBox":
        return BBox(min(self.min_lon, other.min_lon), min(self.min_lat, other.min_lat),
                    max(self.max_lon, other.max_lon), max(self.max_lat, other.max_lat))


@dataclass(frozen=True)
class Ring:
    """A closed vertex loop: first point equals last, no consecutive repeats."""

    points: tuple[GeoPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if len(self.points) < 4:
            raise ValueError(f"ring needs >= 4 points, got {len(self.points)}")
        if self.points[0] != self.points[-1]:
            raise ValueError("ring is not closed (first point != last point)")
        for a, b in zip(self.points, self.points[1:]):
            if a == b:
                raise ValueError(f"ring repeats consecutive point {a}")

    @cached_property
    def coords(self) -> np.ndarray:
        return np.array([(p.lon, p.lat) for p in self.points], dtype=np.float64)

    @cached_property
    def bbox(self) -> BBox:
        c = self.coords
        return BBox(c[:, 0].min(), c[:, 1].min(), c[:, 0].max(), c[:, 1].max())


@dataclass(frozen=True)
class Polygon:
    exterior: Ring
    holes: tuple[Ring, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "holes", tuple(self.holes))
        ebb = self.exterior.bbox
        for h in self.holes:
            hbb = h.bbox
            if (hbb.min_lon < ebb.min_lon or hbb.max_lon > ebb.max_lon
                    or hbb.min_lat < ebb.min_lat or hbb.max_lat > ebb.max_lat):
                raise ValueError("hole extends outside the exterior's bounding box")

    @cached_property
    def bbox(self) -> BBox:
        return self.exterior.bbox

    @cached_property
    def packed(self) -> tuple[np.ndarray, np.ndarray]:
        """All rings concatenated for the kernels: (coords, ring offsets)."""
        rings = (self.exterior,) + self.holes
        coords = np.concatenate([r.coords for r in rings])
        offsets = np.zeros(len(rings) + 1, dtype=np.intp)
        np.cumsum([len(r.points) for r in rings], out=offsets[1:])
        return coords, offsets


@dataclass(frozen=True)
class MultiPolygon:
    polygons: tuple[Polygon, ...]

    def __post_init__(self):
        object.__setattr__(self, "polygons", tuple(self.polygons))
        if not self.polygons:
            raise ValueError("multipolygon is empty")

    @cached_property
    def bbox(self) -> BBox:
        bb = self.polygons[0].bbox
        for p in self.polygons[1:]:
            bb = bb.merge(p.bbox)
        return bb


def point_in_polygon(p: GeoPoint, poly: Polygon) -> bool:
    """Even-odd containment; points exactly on any edge (holes included)
    count as inside."""
    coords, offsets = poly.packed
    return kernels.point_in_rings(coords, offsets, p.lon, p.lat) != 0


def point_in_multipolygon(p: GeoPoint, mp: MultiPolygon) -> bool:
    if not mp.bbox.contains(p):
        return False
    return any(point_in_polygon(p, poly) for poly in mp.polygons
               if poly.bbox.contains(p))


def segments_intersect(a1: GeoPoint, a2: GeoPoint, b1: GeoPoint, b2: GeoPoint) -> bool:
    """True when the closed segments share at least one point — proper
    crossings, endpoint touches, and collinear overlap all count."""
    return kernels.segments_intersect(a1.lon, a1.lat, a2.lon, a2.lat,
                                      b1.lon, b1.lat, b2.lon, b2.lat)


def _polygon_pair_intersects(a: Polygon, b: Polygon) -> bool:
    ca, oa = a.packed
    cb, ob = b.packed
    if kernels.any_vertex_inside(ca, oa, cb, ob):
        return True
    if kernels.any_vertex_inside(cb, ob, ca, oa):
        return True
    return kernels.rings_cross(ca, oa, cb, ob)


def polygons_intersect(a: MultiPolygon, b: MultiPolygon) -> bool:
    """True when the regions share any point: a vertex of one inside the
    other, or any edge crossing. Complete for polygons with holes."""
    if not a.bbox.intersects(b.bbox):
        return False
    for pa in a.polygons:
        for pb in b.polygons:
            if pa.bbox.intersects(pb.bbox) and _polygon_pair_intersects(pa, pb):
                return True
    return False


def bbox_of(g: MultiPolygon) -> BBox:
    """Tight bounds over all exterior vertices (holes cannot extend them)."""
    return g.bbox


def great_circle_m(p: GeoPoint, q: GeoPoint) -> float:
    """Haversine distance in meters. Written so d(p,q) == d(q,p) bit-exactly."""
    dlat = math.radians(abs(q.lat - p.lat))
    dlon = math.radians(abs(q.lon - p.lon))
    h = (math.sin(dlat / 2.0) ** 2
         + math.cos(math.radians(p.lat)) * math.cos(math.radians(q.lat))
         * math.sin(dlon / 2.0) ** 2)
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(h)))
