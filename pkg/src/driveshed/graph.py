"""Road network loading and time-budget reachability.

The graph comes from two CSVs (``id,lat,lon`` nodes and
``from,to,seconds,oneway`` edges) and is stored as a CSR adjacency over
node indices so the Dijkstra kernel can run on flat arrays. Immutable
after load; concurrent queries share it freely.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

import numpy as np

from . import kernels
from .errors import (
    DanglingEdgeError,
    EmptyGraphError,
    MalformedRowError,
    OriginOffNetworkError,
    UnknownSourceError,
)
from .geometry import GeoPoint, great_circle_m


@dataclass(frozen=True)
class RoadGraph:
    ids: tuple[int, ...]              # sorted node ids
    points: tuple[GeoPoint, ...]      # parallel to ids
    indptr: np.ndarray                # CSR row pointers, len(ids) + 1
    targets: np.ndarray               # arc target node indices
    weights: np.ndarray               # arc travel times, seconds
    index_of: dict[int, int] = field(repr=False)

    @property
    def node_count(self) -> int:
        return len(self.ids)

    @property
    def arc_count(self) -> int:
        return len(self.targets)

    def point(self, node_id: int) -> GeoPoint:
        return self.points[self.index_of[node_id]]


@dataclass(frozen=True)
class ReachResult:
    """Nodes reachable within the budget plus the interpolated edge points
    where the budget runs out mid-arc."""

    arrivals: dict[int, float]        # node id -> seconds, all <= budget
    frontier_points: tuple[GeoPoint, ...]
    origin_node: int
    budget: float


def _open_rows(source: str | Path | IO[str]) -> Iterable[list[str]]:
    if hasattr(source, "read"):
        yield from csv.reader(source)
    else:
        with open(source, newline="", encoding="utf-8") as fh:
            yield from csv.reader(fh)


def load_graph(nodes_source, edges_source) -> RoadGraph:
    """Build a RoadGraph from node and edge CSVs.

    Bidirectional edges (oneway=0) become two directed arcs. Raises
    MalformedRowError (with the offending line number), DanglingEdgeError,
    or EmptyGraphError.
    """
    nodes: dict[int, GeoPoint] = {}
    for lineno, row in enumerate(_open_rows(nodes_source), start=1):
        if lineno == 1:
            if [c.strip().lower() for c in row] != ["id", "lat", "lon"]:
                raise MalformedRowError(f"nodes line 1: expected header id,lat,lon, got {row}")
            continue
        if not row:
            continue
        if len(row) != 3:
            raise MalformedRowError(f"nodes line {lineno}: expected 3 fields, got {len(row)}")
        try:
            nid = int(row[0])
            pt = GeoPoint(lon=float(row[2]), lat=float(row[1]))
        except ValueError as exc:
            raise MalformedRowError(f"nodes line {lineno}: {exc}") from exc
        if nid in nodes:
            raise MalformedRowError(f"nodes line {lineno}: duplicate node id {nid}")
        nodes[nid] = pt

    if not nodes:
        raise EmptyGraphError("nodes file contains no nodes")

    ids = tuple(sorted(nodes))
    index_of = {nid: i for i, nid in enumerate(ids)}
    adjacency: list[list[tuple[int, float]]] = [[] for _ in ids]

    for lineno, row in enumerate(_open_rows(edges_source), start=1):
        if lineno == 1:
            if [c.strip().lower() for c in row] != ["from", "to", "seconds", "oneway"]:
                raise MalformedRowError(
                    f"edges line 1: expected header from,to,seconds,oneway, got {row}")
            continue
        if not row:
            continue
        if len(row) != 4:
            raise MalformedRowError(f"edges line {lineno}: expected 4 fields, got {len(row)}")
        try:
            u = int(row[0])
            v = int(row[1])
            seconds = float(row[2])
            oneway = int(row[3])
        except ValueError as exc:
            raise MalformedRowError(f"edges line {lineno}: {exc}") from exc
        if not math.isfinite(seconds) or seconds <= 0:
            raise MalformedRowError(f"edges line {lineno}: travel time must be > 0, got {row[2]}")
        if oneway not in (0, 1):
            raise MalformedRowError(f"edges line {lineno}: oneway must be 0 or 1, got {row[3]}")
        for nid in (u, v):
            if nid not in index_of:
                raise DanglingEdgeError(f"edges line {lineno}: unknown node id {nid}")
        adjacency[index_of[u]].append((index_of[v], seconds))
        if oneway == 0:
            adjacency[index_of[v]].append((index_of[u], seconds))

    indptr = np.zeros(len(ids) + 1, dtype=np.intp)
    np.cumsum([len(a) for a in adjacency], out=indptr[1:])
    targets = np.array([v for a in adjacency for v, _ in a], dtype=np.intp)
    weights = np.array([w for a in adjacency for _, w in a])

    return RoadGraph(ids=ids, points=tuple(nodes[n] for n in ids),
                     indptr=indptr, targets=targets, weights=weights,
                     index_of=index_of)


def nearest_node(g: RoadGraph, p: GeoPoint, snap_radius: float) -> int:
    """Node closest to p by great-circle distance; ties broken by smallest
    node id. OriginOffNetworkError when even the closest is farther than
    snap_radius meters."""
    best_id = -1
    best_d = math.inf
    for nid, pt in zip(g.ids, g.points):
        d = great_circle_m(p, pt)
        if d < best_d:
            best_d = d
            best_id = nid
    if best_d > snap_radius:
        raise OriginOffNetworkError(
            f"nearest node is {best_d:.0f} m away, beyond the {snap_radius:.0f} m snap radius")
    return best_id


def reachable_set(g: RoadGraph, source: int, budget: float) -> ReachResult:
    """Single-source arrival times truncated at the budget.

    A frontier point is interpolated along every arc (u -> v, w) with
    arrivals[u] <= budget < arrivals[u] + w whose target was not reached
    more cheaply some other way, at fraction (budget - arrivals[u]) / w of
    the straight u -> v segment.
    """
    if source not in g.index_of:
        raise UnknownSourceError(f"node {source} is not in the graph")
    src = g.index_of[source]
    dist = kernels.dijkstra_budget(g.indptr, g.targets, g.weights, src, float(budget))

    arrivals: dict[int, float] = {}
    for i, nid in enumerate(g.ids):
        if dist[i] <= budget:
            arrivals[nid] = float(dist[i])

    frontier: list[GeoPoint] = []
    for i, nid in enumerate(g.ids):
        du = dist[i]
        if du > budget:
            continue
        for k in range(int(g.indptr[i]), int(g.indptr[i + 1])):
            v = int(g.targets[k])
            w = float(g.weights[k])
            if du + w > budget and dist[v] > budget:
                f = (budget - du) / w
                pu = g.points[i]
                pv = g.points[v]
                frontier.append(GeoPoint(lon=pu.lon + (pv.lon - pu.lon) * f,
                                         lat=pu.lat + (pv.lat - pu.lat) * f))

    return ReachResult(arrivals=arrivals, frontier_points=tuple(frontier),
                       origin_node=source, budget=float(budget))
