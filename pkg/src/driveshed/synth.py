"""Deterministic demo data: lattice road graphs, rectangular county maps,
cumulative case/death CSVs in the upstream wide format, and a tiny
gazetteer. Everything the test suite and the demo deployment need can be
generated from here; nothing is downloaded.
"""

from __future__ import annotations

import datetime as _dt
import io
import json
from dataclasses import dataclass
from pathlib import Path

from .geometry import GeoPoint

LATTICE_CENTER = GeoPoint(lon=-97.0, lat=31.0)


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


@dataclass(frozen=True)
class GraphFixture:
    """A generated road graph plus the bookkeeping the generator knows."""

    nodes: tuple[tuple[int, float, float], ...]     # id, lat, lon
    edges: tuple[tuple[int, int, float, int], ...]  # from, to, seconds, oneway
    node_count: int
    arc_count: int

    def nodes_csv(self) -> str:
        lines = ["id,lat,lon"]
        lines += [f"{i},{_fmt(lat)},{_fmt(lon)}" for i, lat, lon in self.nodes]
        return "\n".join(lines) + "\n"

    def edges_csv(self) -> str:
        lines = ["from,to,seconds,oneway"]
        lines += [f"{u},{v},{_fmt(s)},{o}" for u, v, s, o in self.edges]
        return "\n".join(lines) + "\n"

    def write(self, nodes_path, edges_path) -> None:
        Path(nodes_path).write_text(self.nodes_csv(), encoding="utf-8")
        Path(edges_path).write_text(self.edges_csv(), encoding="utf-8")

    def load(self):
        from .graph import load_graph
        return load_graph(io.StringIO(self.nodes_csv()), io.StringIO(self.edges_csv()))


def lattice_graph(n: int = 21, spacing_deg: float = 0.02,
                  center: GeoPoint = LATTICE_CENTER,
                  seconds: float = 600.0) -> GraphFixture:
    """n x n square lattice of bidirectional roads, row-major node ids
    (id = row * n + col), every edge the same travel time. The center node
    sits exactly at `center`."""
    half = (n - 1) / 2.0
    nodes = []
    for j in range(n):
        for i in range(n):
            nodes.append((j * n + i,
                          center.lat + (j - half) * spacing_deg,
                          center.lon + (i - half) * spacing_deg))
    edges = []
    for j in range(n):
        for i in range(n):
            nid = j * n + i
            if i + 1 < n:
                edges.append((nid, nid + 1, seconds, 0))
            if j + 1 < n:
                edges.append((nid, nid + n, seconds, 0))
    return GraphFixture(nodes=tuple(nodes), edges=tuple(edges),
                        node_count=n * n, arc_count=2 * len(edges))


def diamond_graph(radius: int = 4, spacing_deg: float = 0.02,
                  center: GeoPoint = LATTICE_CENTER,
                  seconds: float = 600.0) -> GraphFixture:
    """Lattice nodes within Manhattan `radius` of the center (41 nodes at
    radius 4) and the lattice edges among them."""
    n = 2 * radius + 1
    full = lattice_graph(n=n, spacing_deg=spacing_deg, center=center, seconds=seconds)
    keep = {j * n + i for j in range(n) for i in range(n)
            if abs(i - radius) + abs(j - radius) <= radius}
    nodes = tuple(row for row in full.nodes if row[0] in keep)
    edges = tuple(e for e in full.edges if e[0] in keep and e[1] in keep)
    return GraphFixture(nodes=nodes, edges=edges,
                        node_count=len(nodes), arc_count=2 * len(edges))


# -- counties ----------------------------------------------------------------

def _rect(lon0, lat0, lon1, lat1) -> list:
    return [[lon0, lat0], [lon1, lat0], [lon1, lat1], [lon0, lat1], [lon0, lat0]]


THREE_COUNTIES = (
    ("48001", "Alder", "Texas", -98.05, -97.05),
    ("48003", "Birch", "Texas", -97.05, -96.05),
    ("48005", "Cedar", "Texas", -96.05, -95.05),
)


def three_county_geojson() -> dict:
    """Three 1-degree-wide counties side by side; the lattice fixture's
    center falls in Birch and a one-hour drive reaches into Alder. Cedar
    is stored as a single-part MultiPolygon to exercise both geometry
    encodings."""
    features = []
    for idx, (fips, name, state, lon0, lon1) in enumerate(THREE_COUNTIES):
        ring = _rect(lon0, 30.5, lon1, 31.5)
        if idx == 2:
            geometry = {"type": "MultiPolygon", "coordinates": [[ring]]}
        else:
            geometry = {"type": "Polygon", "coordinates": [ring]}
        features.append({"type": "Feature",
                         "properties": {"fips": fips, "name": name, "state": state},
                         "geometry": geometry})
    return {"type": "FeatureCollection", "features": features}


def us_scale_counties(cols: int = 62, rows: int = 50) -> dict:
    """A continental-scale rectangle quilt (62 x 50 = 3,100 features by
    default) for index stress tests. State number = row + 1, county
    number = 2 * col + 1."""
    lon0, lon1 = -124.0, -67.0
    lat0, lat1 = 25.0, 49.0
    w = (lon1 - lon0) / cols
    h = (lat1 - lat0) / rows
    features = []
    for r in range(rows):
        for c in range(cols):
            fips = f"{r + 1:02d}{2 * c + 1:03d}"
            ring = _rect(lon0 + c * w, lat0 + r * h, lon0 + (c + 1) * w, lat0 + (r + 1) * h)
            features.append({"type": "Feature",
                             "properties": {"fips": fips,
                                            "name": f"County R{r + 1}C{c + 1}",
                                            "state": f"State {r + 1:02d}"},
                             "geometry": {"type": "Polygon", "coordinates": [ring]}})
    return {"type": "FeatureCollection", "features": features}


def write_geojson(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc), encoding="utf-8")


# -- case / death tables -----------------------------------------------------

CSSE_META_COLS = ["UID", "iso2", "iso3", "code3", "FIPS", "Admin2",
                  "Province_State", "Country_Region", "Lat", "Long_", "Combined_Key"]

# fips, name, state, lat, lon, cases per day, deaths per day, population
FIXTURE_ROWS = (
    ("48001", "Alder", "Texas", 31.0, -97.55, 5, 2, 41000),
    ("48003", "Birch", "Texas", 31.0, -96.55, 3, 1, 63000),
    ("48005", "Cedar", "Texas", 31.0, -95.55, 2, 1, 52000),
    ("", "Unassigned", "Texas", "", "", 1, 1, 0),
    ("40001", "Oak", "Oklahoma", 34.0, -96.0, 4, 2, 38000),
)

FIRST_DAY = _dt.date(2020, 1, 22)


def csse_dates(days: int = 30, start: _dt.date = FIRST_DAY) -> list[str]:
    out = []
    for k in range(days):
        d = start + _dt.timedelta(days=k)
        out.append(f"{d.month}/{d.day}/{d.strftime('%y')}")
    return out


def csse_csv(metric: str, days: int = 30) -> str:
    """Wide cumulative CSV in the upstream layout. Every county climbs at
    a constant integer rate, so any scope total is rate * day, summable by
    hand."""
    if metric not in ("cases", "deaths"):
        raise ValueError(f"metric must be cases or deaths, got {metric!r}")
    header = list(CSSE_META_COLS)
    if metric == "deaths":
        header.append("Population")
    header += csse_dates(days)
    lines = [",".join(header)]
    for fips, name, state, lat, lon, c_rate, d_rate, pop in FIXTURE_ROWS:
        rate = c_rate if metric == "cases" else d_rate
        uid = f"840{fips}" if fips else "84090048"
        combined = f'"{name}, {state}, US"'
        cells = [uid, "US", "USA", "840", fips, name, state, "US",
                 str(lat), str(lon), combined]
        if metric == "deaths":
            cells.append(str(pop))
        cells += [str(rate * (k + 1)) for k in range(days)]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# -- gazetteer ---------------------------------------------------------------

GAZETTEER_ROWS = (
    ("Austin", "Texas", 30.2672, -97.7431, 961855),
    ("Austin", "Minnesota", 43.6666, -92.9746, 26174),
    ("Springfield", "Illinois", 39.7817, -89.6501, 114394),
    ("Springfield", "Missouri", 37.2090, -93.2923, 169176),
    ("Riverton", "Alabama", 34.8, -87.7, 5000),
    ("Riverton", "Wyoming", 43.0242, -108.3801, 5000),
    ("Waco", "Texas", 31.5493, -97.1467, 138486),
    # sits exactly on the lattice fixture's center node
    ("Gridville", "Texas", 31.0, -97.0, 1000),
)


def gazetteer_csv() -> str:
    lines = ["name,admin1,lat,lon,population"]
    lines += [f"{n},{a},{lat},{lon},{p}" for n, a, lat, lon, p in GAZETTEER_ROWS]
    return "\n".join(lines) + "\n"


def write_demo(dirpath) -> Path:
    """Materialize the whole fixture suite plus a config file pointing
    at it. Returns the config path; the tree is self-contained and
    relocatable."""
    root = Path(dirpath)
    root.mkdir(parents=True, exist_ok=True)
    lattice_graph().write(root / "nodes.csv", root / "edges.csv")
    (root / "counties.geojson").write_text(
        json.dumps(three_county_geojson()), encoding="utf-8")
    (root / "cases.csv").write_text(csse_csv("cases"), encoding="utf-8")
    (root / "deaths.csv").write_text(csse_csv("deaths"), encoding="utf-8")
    (root / "gazetteer.csv").write_text(gazetteer_csv(), encoding="utf-8")
    config = "\n".join([
        "# demo data tree",
        "graph_nodes = nodes.csv",
        "graph_edges = edges.csv",
        "counties = counties.geojson",
        "cases_csv = cases.csv",
        "deaths_csv = deaths.csv",
        "gazetteer = gazetteer.csv",
        "commitment_log = commitments.jsonl",
        "budget = 3600",
        "cell_size = 1000",
        "",
    ])
    (root / "demo.cfg").write_text(config, encoding="utf-8")
    return root / "demo.cfg"
