"""Offline place-name lookup.

A small CSV of places stands in for a hosted geocoder, so the service
runs with no network access at all. Lookup is exact-match only (after
case folding and whitespace normalization): a miss is a clean
PlaceNotFound, never a surprising fuzzy hit.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

from .errors import EmptyQueryError, MalformedRowError, PlaceNotFoundError
from .geometry import GeoPoint

HEADER = ("name", "admin1", "lat", "lon", "population")


@dataclass(frozen=True)
class GazetteerEntry:
    name: str
    admin1: str
    lat: float
    lon: float
    population: int

    def __post_init__(self):
        if not self.name.strip():
            raise MalformedRowError("entry name is empty")
        if self.population < 0:
            raise MalformedRowError(f"negative population {self.population}")
        GeoPoint(lon=self.lon, lat=self.lat)  # range check

    @property
    def point(self) -> GeoPoint:
        return GeoPoint(lon=self.lon, lat=self.lat)

    @property
    def label(self) -> str:
        return f"{self.name}, {self.admin1}"


@dataclass(frozen=True)
class GeocodeResult:
    point: GeoPoint
    matched_name: str
    source: str             # "gazetteer" or "external"


def _norm(text: str) -> str:
    """Case-fold and collapse whitespace runs; the key form for every
    lookup."""
    return " ".join(text.split()).casefold()


class Gazetteer:
    """Immutable after construction; keyed by both "name, admin1" and
    bare "name"."""

    def __init__(self, entries):
        self.entries = tuple(entries)
        self._full: dict[str, GazetteerEntry] = {}
        self._by_name: dict[str, list[GazetteerEntry]] = {}
        for e in self.entries:
            self._full[_norm(e.label)] = e
            self._by_name.setdefault(_norm(e.name), []).append(e)

    def __len__(self) -> int:
        return len(self.entries)


def load_gazetteer(source) -> Gazetteer:
    """Read `name,admin1,lat,lon,population` CSV from a path or open
    text file."""
    if hasattr(source, "read"):
        rows = list(csv.reader(source))
    else:
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    if not rows or tuple(c.strip() for c in rows[0]) != HEADER:
        raise MalformedRowError(
            f"expected header {','.join(HEADER)!r}")
    entries = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 5:
            raise MalformedRowError(
                f"line {lineno}: expected 5 fields, got {len(row)}")
        name, admin1, lat, lon, pop = (c.strip() for c in row)
        try:
            entry = GazetteerEntry(name=name, admin1=admin1,
                                   lat=float(lat), lon=float(lon),
                                   population=int(pop))
        except (ValueError, MalformedRowError) as exc:
            raise MalformedRowError(f"line {lineno}: {exc}") from exc
        entries.append(entry)
    return Gazetteer(entries)


def geocode_local(index: Gazetteer, query: str) -> GeocodeResult:
    """Exact lookup: "name, admin1" form wins outright; a bare name with
    several hits picks the most populous, alphabetical admin1 on ties."""
    key = _norm(query)
    if not key:
        raise EmptyQueryError("empty place query")
    hit = index._full.get(key)
    if hit is None:
        candidates = index._by_name.get(key)
        if candidates:
            hit = min(candidates, key=lambda e: (-e.population, e.admin1))
    if hit is None:
        raise PlaceNotFoundError(f"no gazetteer entry for {query.strip()!r}")
    return GeocodeResult(point=hit.point, matched_name=hit.label,
                         source="gazetteer")
