"""Conversions between the geometry types and GeoJSON dictionaries."""

from __future__ import annotations

from .errors import MalformedGeoJSONError
from .geometry import GeoPoint, MultiPolygon, Polygon, Ring


def _ring_from_coords(coords, where: str) -> Ring:
    if not isinstance(coords, (list, tuple)) or len(coords) < 4:
        raise MalformedGeoJSONError(f"{where}: ring needs >= 4 positions")
    pts = []
    for pos in coords:
        if not isinstance(pos, (list, tuple)) or len(pos) < 2:
            raise MalformedGeoJSONError(f"{where}: bad position {pos!r}")
        try:
            pts.append(GeoPoint(lon=float(pos[0]), lat=float(pos[1])))
        except (TypeError, ValueError) as exc:
            raise MalformedGeoJSONError(f"{where}: {exc}") from exc
    try:
        return Ring(points=tuple(pts))
    except ValueError as exc:
        raise MalformedGeoJSONError(f"{where}: {exc}") from exc


def _polygon_from_coords(coords, where: str) -> Polygon:
    if not isinstance(coords, (list, tuple)) or not coords:
        raise MalformedGeoJSONError(f"{where}: polygon has no rings")
    rings = [_ring_from_coords(r, where) for r in coords]
    try:
        return Polygon(exterior=rings[0], holes=tuple(rings[1:]))
    except ValueError as exc:
        raise MalformedGeoJSONError(f"{where}: {exc}") from exc


def multipolygon_from_geometry(geom, where: str = "geometry") -> MultiPolygon:
    """Accepts a GeoJSON Polygon or MultiPolygon geometry dict."""
    if not isinstance(geom, dict):
        raise MalformedGeoJSONError(f"{where}: geometry is not an object")
    kind = geom.get("type")
    coords = geom.get("coordinates")
    if kind == "Polygon":
        return MultiPolygon(polygons=(_polygon_from_coords(coords, where),))
    if kind == "MultiPolygon":
        if not isinstance(coords, (list, tuple)) or not coords:
            raise MalformedGeoJSONError(f"{where}: empty MultiPolygon")
        polys = tuple(_polygon_from_coords(c, where) for c in coords)
        return MultiPolygon(polygons=polys)
    raise MalformedGeoJSONError(f"{where}: unsupported geometry type {kind!r}")


def _ring_coords(r: Ring) -> list:
    return [[p.lon, p.lat] for p in r.points]


def geometry_from_multipolygon(mp: MultiPolygon) -> dict:
    return {"type": "MultiPolygon",
            "coordinates": [[_ring_coords(poly.exterior)]
                            + [_ring_coords(h) for h in poly.holes]
                            for poly in mp.polygons]}


def feature(geometry: dict, properties: dict) -> dict:
    return {"type": "Feature", "properties": properties, "geometry": geometry}


def feature_collection(features: list) -> dict:
    return {"type": "FeatureCollection", "features": list(features)}
