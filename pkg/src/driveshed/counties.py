"""County boundaries, FIPS bookkeeping, and isochrone-to-county queries.

A uniform 0.5-degree grid over county bounding boxes prunes intersection
candidates. The index is an accelerator only: every query is defined by
the brute-force scan over all counties, and `use_index=False` runs
exactly that, so the two paths can be compared directly.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Optional

from .errors import DuplicateFipsError, MalformedGeoJSONError, MissingPropertyError
from .geojson import multipolygon_from_geometry
from .geometry import GeoPoint, MultiPolygon, point_in_multipolygon, polygons_intersect

INDEX_CELL_DEG = 0.5

_FIPS_OK = re.compile(r"^[0-9]{5}$")
_FIPS_NUMERIC = re.compile(r"^([0-9]+)(?:\.0+)?$")


@dataclass(frozen=True)
class CountyBoundary:
    fips: str
    name: str
    state: str
    geometry: MultiPolygon


class CountyBoundarySet:
    """Immutable after construction; safe for concurrent readers."""

    def __init__(self, counties: dict[str, CountyBoundary]):
        self.counties = dict(counties)
        self._index: dict[tuple[int, int], list[str]] = {}
        for fips in sorted(self.counties):
            for cell in _bbox_cells(self.counties[fips].geometry.bbox):
                self._index.setdefault(cell, []).append(fips)

    def __len__(self) -> int:
        return len(self.counties)

    def index_cells(self) -> dict[tuple[int, int], list[str]]:
        return {cell: list(fips) for cell, fips in self._index.items()}

    def candidates_for(self, bbox) -> list[str]:
        seen = set()
        for cell in _bbox_cells(bbox):
            seen.update(self._index.get(cell, ()))
        return sorted(seen)


def _bbox_cells(bbox):
    i0 = math.floor(bbox.min_lon / INDEX_CELL_DEG)
    i1 = math.floor(bbox.max_lon / INDEX_CELL_DEG)
    j0 = math.floor(bbox.min_lat / INDEX_CELL_DEG)
    j1 = math.floor(bbox.max_lat / INDEX_CELL_DEG)
    for i in range(i0, i1 + 1):
        for j in range(j0, j1 + 1):
            yield (i, j)


def normalize_fips(value, where: str = "feature") -> str:
    """'1001' -> '01001', 36061.0 -> '36061'; anything non-numeric or wider
    than 5 digits is rejected."""
    if isinstance(value, (int, float)):
        if isinstance(value, float) and not value.is_integer():
            raise MalformedGeoJSONError(f"{where}: non-integer fips {value!r}")
        text = str(int(value))
    else:
        m = _FIPS_NUMERIC.match(str(value).strip())
        if not m:
            raise MalformedGeoJSONError(f"{where}: non-numeric fips {value!r}")
        text = str(int(m.group(1)))
    text = text.zfill(5)
    if not _FIPS_OK.match(text):
        raise MalformedGeoJSONError(f"{where}: fips {value!r} does not fit 5 digits")
    return text


def load_counties(source) -> CountyBoundarySet:
    """Read a GeoJSON FeatureCollection of county features.

    Each feature needs properties fips/name/state and a Polygon or
    MultiPolygon geometry. Raises MalformedGeoJSON, DuplicateFips, or
    MissingProperty (naming the offending feature index).
    """
    if isinstance(source, dict):
        doc = source
    elif hasattr(source, "read"):
        doc = json.load(source)
    else:
        with open(source, encoding="utf-8") as fh:
            doc = json.load(fh)

    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection" \
            or not isinstance(doc.get("features"), list):
        raise MalformedGeoJSONError("not a FeatureCollection")

    counties: dict[str, CountyBoundary] = {}
    for idx, feat in enumerate(doc["features"]):
        where = f"feature {idx}"
        if not isinstance(feat, dict):
            raise MalformedGeoJSONError(f"{where}: not an object")
        props = feat.get("properties") or {}
        for key in ("fips", "name", "state"):
            if key not in props or props[key] in (None, ""):
                raise MissingPropertyError(f"{where}: missing property {key!r}")
        fips = normalize_fips(props["fips"], where)
        if fips in counties:
            raise DuplicateFipsError(f"{where}: fips {fips} already seen")
        geometry = multipolygon_from_geometry(feat.get("geometry"), where)
        counties[fips] = CountyBoundary(fips=fips, name=str(props["name"]),
                                        state=str(props["state"]), geometry=geometry)
    return CountyBoundarySet(counties)


def counties_intersecting(cset: CountyBoundarySet, iso: MultiPolygon,
                          use_index: bool = True) -> list[str]:
    """Ascending FIPS of every county whose geometry touches `iso`.
    `use_index=False` scans all counties; results are identical."""
    if use_index:
        fips_pool = cset.candidates_for(iso.bbox)
    else:
        fips_pool = sorted(cset.counties)
    out = []
    for fips in fips_pool:
        if polygons_intersect(cset.counties[fips].geometry, iso):
            out.append(fips)
    return out


def county_for_point(cset: CountyBoundarySet, p: GeoPoint) -> Optional[str]:
    """First county (ascending FIPS) containing p, or None."""
    cell = (math.floor(p.lon / INDEX_CELL_DEG), math.floor(p.lat / INDEX_CELL_DEG))
    for fips in cset._index.get(cell, ()):
        if point_in_multipolygon(p, cset.counties[fips].geometry):
            return fips
    return None
