"""HTTP facade over the pipeline.

One request path does the whole chain: resolve the origin, draw the
drive-time area, intersect counties, aggregate the series, phrase the
summary. The CLI's local-stats command calls the same build function
and the same byte serializer, which is what makes its JSON output
byte-identical to a service response for the same snapshot and query.

Every handler reads the snapshot reference exactly once, so a
concurrent refresh can never mix two data versions inside one response.
"""

from __future__ import annotations

import json
import threading
from contextlib import asynccontextmanager
from dataclasses import dataclass
from typing import Optional

from fastapi import FastAPI, Request, Response

from .commitments import (
    CommitmentItems,
    CommitmentStore,
    make_commitment,
    record_share,
    total_commitments,
)
from .config import AppConfig
from .counties import counties_intersecting, county_for_point
from .errors import (
    BadRequestError,
    DriveshedError,
    PlaceNotFoundError,
    RegionUnresolvedError,
)
from .gazetteer import Gazetteer, geocode_local, load_gazetteer
from .geojson import geometry_from_multipolygon
from .geometry import GeoPoint
from .graph import RoadGraph, load_graph
from .isochrone import compute_isochrone
from .providers import geocode_external, isochrone_external
from .series import NATION, aggregate, latest_totals, summary_sentence
from .snapshot import (
    SnapshotHolder,
    build_snapshot,
    start_refresh_thread,
)

# wire code -> HTTP status; anything unlisted is a 500
STATUS_BY_CODE = {
    "BAD_REQUEST": 400,
    "EMPTY_QUERY": 400,
    "ALL_ITEMS_FALSE": 400,
    "UNKNOWN_CHANNEL": 400,
    "PLACE_NOT_FOUND": 404,
    "NO_MATCH": 404,
    "ORIGIN_OFF_NETWORK": 404,
    "REGION_UNRESOLVED": 404,
    "UNKNOWN_ID": 404,
    "NETWORK": 502,
    "UNAUTHORIZED": 502,
    "QUOTA_EXCEEDED": 502,
    "MALFORMED_RESPONSE": 502,
    "STORAGE_FAILURE": 500,
    "SNAPSHOT": 503,
}


def canonical_json(obj) -> bytes:
    """The one serialization used for response bodies everywhere."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False).encode()


@dataclass
class ServiceState:
    cfg: AppConfig
    graph: RoadGraph
    gazetteer: Gazetteer
    holder: SnapshotHolder
    store: CommitmentStore
    http_transport: object = None


def _resolve_origin(state: ServiceState, lat, lon, place):
    if place is not None:
        try:
            r = geocode_local(state.gazetteer, place)
        except PlaceNotFoundError:
            if state.cfg.geocoder is None:
                raise
            r = geocode_external(state.cfg.geocoder, place,
                                 transport=state.http_transport)
        return r.point, r.matched_name
    try:
        return GeoPoint(lon=lon, lat=lat), None
    except ValueError as exc:
        raise BadRequestError(str(exc))


def build_local_stats(state: ServiceState, lat: Optional[float] = None,
                      lon: Optional[float] = None,
                      place: Optional[str] = None) -> dict:
    """Assemble the full local-stats payload against one snapshot."""
    snap = state.holder.get()
    cfg = state.cfg
    origin, matched = _resolve_origin(state, lat, lon, place)

    if cfg.isochrone_provider is not None:
        iso = isochrone_external(cfg.isochrone_provider, origin,
                                 cfg.isochrone.budget,
                                 transport=state.http_transport)
    else:
        iso = compute_isochrone(state.graph, origin, cfg.isochrone)

    intersected = counties_intersecting(snap.counties, iso)

    home = county_for_point(snap.counties, origin)
    if home is not None:
        state_name = snap.counties.counties[home].state
    elif intersected:
        state_name = snap.counties.counties[intersected[0]].state
    else:
        raise RegionUnresolvedError(
            "origin is outside every known county and the drive-time "
            "area touches none")

    resolved = sorted({cfg.resolve_fips(f) for f in intersected})
    agg_cases = aggregate(snap.cases, resolved)
    agg_deaths = aggregate(snap.deaths, resolved)

    cases_by_fips = snap.cases.by_fips
    deaths_by_fips = snap.deaths.by_fips
    county_rows = []
    for f in intersected:
        boundary = snap.counties.counties[f]
        rf = cfg.resolve_fips(f)
        county_rows.append({
            "fips": f,
            "name": boundary.name,
            "cases": cases_by_fips[rf].latest,
            "deaths": deaths_by_fips[rf].latest,
        })

    summary = summary_sentence(
        agg_cases.cumulative_latest, agg_deaths.cumulative_latest,
        latest_totals(snap.cases, state_name),
        latest_totals(snap.deaths, state_name), state_name,
        latest_totals(snap.cases, NATION),
        latest_totals(snap.deaths, NATION))

    return {
        "origin": {"lon": origin.lon, "lat": origin.lat,
                   "matched_name": matched},
        "isochrone": geometry_from_multipolygon(iso),
        "counties": county_rows,
        "trend": {"dates": list(agg_cases.index.dates),
                  "cases": list(agg_cases.rolling7),
                  "deaths": list(agg_deaths.rolling7)},
        "summary": list(summary),
        "data_version": snap.data_version,
    }


def _error_response(exc: DriveshedError) -> Response:
    status = STATUS_BY_CODE.get(exc.code, 500)
    body = canonical_json({"code": exc.code, "message": str(exc)})
    return Response(content=body, status_code=status,
                    media_type="application/json")


def _json_response(obj, status: int = 200) -> Response:
    return Response(content=canonical_json(obj), status_code=status,
                    media_type="application/json")


async def _read_json_object(request: Request) -> dict:
    raw = await request.body()
    try:
        body = json.loads(raw)
    except (UnicodeDecodeError, json.JSONDecodeError):
        raise BadRequestError("body is not valid JSON")
    if not isinstance(body, dict):
        raise BadRequestError("body must be a JSON object")
    return body


def _parse_float(params, key) -> Optional[float]:
    if key not in params:
        return None
    try:
        return float(params[key])
    except ValueError:
        raise BadRequestError(f"{key} is not a number: {params[key]!r}")


def create_app(cfg: AppConfig, *, http_transport=None) -> FastAPI:
    """Load everything, then serve. Data problems surface here at
    startup, not on the first request."""
    graph = load_graph(cfg.graph_nodes, cfg.graph_edges)
    gazetteer = load_gazetteer(cfg.gazetteer)
    holder = SnapshotHolder(build_snapshot(cfg))
    store = CommitmentStore(cfg.commitment_log)
    state = ServiceState(cfg=cfg, graph=graph, gazetteer=gazetteer,
                         holder=holder, store=store,
                         http_transport=http_transport)
    stop = threading.Event()

    @asynccontextmanager
    async def lifespan(app):
        start_refresh_thread(holder, cfg, stop)
        yield
        stop.set()
        store.close()

    app = FastAPI(title="driveshed", lifespan=lifespan,
                  docs_url=None, redoc_url=None, openapi_url=None)
    app.state.driveshed = state

    if cfg.cors_origin:
        from fastapi.middleware.cors import CORSMiddleware
        app.add_middleware(CORSMiddleware, allow_origins=[cfg.cors_origin],
                           allow_methods=["*"], allow_headers=["*"])

    @app.get("/api/local-stats")
    def local_stats(request: Request):
        params = request.query_params
        try:
            lat = _parse_float(params, "lat")
            lon = _parse_float(params, "lon")
            place = params.get("place")
            has_coords = lat is not None or lon is not None
            if has_coords and place is not None:
                raise BadRequestError("give lat/lon or place, not both")
            if not has_coords and place is None:
                raise BadRequestError("give lat and lon, or place")
            if has_coords and (lat is None or lon is None):
                raise BadRequestError("lat and lon go together")
            payload = build_local_stats(state, lat=lat, lon=lon, place=place)
        except DriveshedError as exc:
            return _error_response(exc)
        return _json_response(payload)

    @app.post("/api/commitments")
    async def commit(request: Request):
        try:
            body = await _read_json_object(request)
            items = body.get("items")
            if not isinstance(items, list):
                raise BadRequestError('body needs an "items" array')
            receipt = make_commitment(store, CommitmentItems.from_list(items))
        except DriveshedError as exc:
            return _error_response(exc)
        return _json_response({"id": receipt.id, "total": receipt.new_total})

    @app.get("/api/commitments/count")
    def count():
        return _json_response({"total": total_commitments(store)})

    @app.post("/api/commitments/{commitment_id}/share")
    async def share(commitment_id: str, request: Request):
        try:
            body = await _read_json_object(request)
            channel = body.get("channel")
            if not isinstance(channel, str):
                raise BadRequestError('body needs a "channel" string')
            record_share(store, commitment_id, channel)
        except DriveshedError as exc:
            return _error_response(exc)
        return _json_response({"ok": True})

    @app.get("/healthz")
    def healthz():
        return _json_response({"status": "ok",
                               "data_version": holder.get().data_version})

    return app
