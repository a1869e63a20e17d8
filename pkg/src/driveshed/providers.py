"""Optional external HTTP backends.

Two small clients matching openrouteservice-style endpoints: a forward
geocoder and a drive-time isochrone service. Both are opt-in; the
offline gazetteer and local routing cover everything without them.

Retry policy: transport failures, 5xx, and 429 are transient and
retried up to retry_count times with no backoff sleep, so a call never
blocks longer than timeout * (retry_count + 1). Auth failures raise
immediately.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import httpx

from .errors import (
    ConfigError,
    DriveshedError,
    MalformedResponseError,
    NetworkError,
    NoMatchError,
    QuotaExceededError,
    UnauthorizedError,
)
from .gazetteer import GeocodeResult
from .geojson import multipolygon_from_geometry
from .geometry import GeoPoint, MultiPolygon

GEOCODE_PATH = "/geocode/search"
ISOCHRONE_PATH = "/v2/isochrones/driving-car"


@dataclass(frozen=True)
class ProviderConfig:
    base_url: str
    api_key: str = ""
    timeout: float = 10.0
    retry_count: int = 2
    key_in_header: bool = True      # else sent as ?api_key=

    def __post_init__(self):
        if not self.base_url:
            raise ConfigError("provider base_url is empty")
        if not self.timeout > 0:
            raise ConfigError(f"timeout must be > 0, got {self.timeout}")
        if self.retry_count < 0:
            raise ConfigError(
                f"retry_count must be >= 0, got {self.retry_count}")


def _request(cfg: ProviderConfig, method: str, path: str, *,
             params: Optional[dict] = None, json_body=None,
             transport=None) -> httpx.Response:
    headers = {}
    params = dict(params or {})
    if cfg.api_key:
        if cfg.key_in_header:
            headers["Authorization"] = cfg.api_key
        else:
            params["api_key"] = cfg.api_key
    last: Optional[BaseException] = None
    with httpx.Client(base_url=cfg.base_url, timeout=cfg.timeout,
                      transport=transport) as client:
        for _ in range(cfg.retry_count + 1):
            try:
                resp = client.request(method, path, params=params,
                                      json=json_body, headers=headers)
            except httpx.HTTPError as exc:
                last = NetworkError(f"transport failure: {exc}")
                continue
            if resp.status_code in (401, 403):
                raise UnauthorizedError(
                    f"provider rejected credentials ({resp.status_code})")
            if resp.status_code == 429:
                last = QuotaExceededError("provider rate limit (429)")
                continue
            if resp.status_code >= 500:
                last = NetworkError(f"server error {resp.status_code}")
                continue
            if resp.status_code != 200:
                raise NetworkError(f"unexpected status {resp.status_code}")
            return resp
    assert last is not None
    if isinstance(last, DriveshedError):
        raise last
    raise NetworkError(str(last))


def geocode_external(cfg: ProviderConfig, query: str, *,
                     transport=None) -> GeocodeResult:
    """First candidate from the provider's forward-geocode endpoint."""
    resp = _request(cfg, "GET", GEOCODE_PATH, params={"text": query},
                    transport=transport)
    try:
        body = resp.json()
    except ValueError as exc:
        raise MalformedResponseError(f"geocoder returned non-JSON: {exc}")
    candidates = body.get("candidates") if isinstance(body, dict) else body
    if not isinstance(candidates, list):
        raise MalformedResponseError("geocoder body has no candidate list")
    if not candidates:
        raise NoMatchError(f"provider found nothing for {query!r}")
    first = candidates[0]
    try:
        point = GeoPoint(lon=float(first["lon"]), lat=float(first["lat"]))
        label = str(first["label"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedResponseError(f"bad candidate shape: {exc}")
    return GeocodeResult(point=point, matched_name=label, source="external")


def isochrone_external(cfg: ProviderConfig, origin: GeoPoint,
                       budget: float, *, transport=None) -> MultiPolygon:
    """Provider-drawn drive-time area, parsed to the same MultiPolygon
    the local engine produces so downstream county math cannot tell the
    backends apart."""
    body = {"locations": [[origin.lon, origin.lat]], "range": [budget]}
    resp = _request(cfg, "POST", ISOCHRONE_PATH, json_body=body,
                    transport=transport)
    try:
        doc = resp.json()
    except ValueError as exc:
        raise MalformedResponseError(f"isochrone returned non-JSON: {exc}")
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise MalformedResponseError("expected a GeoJSON FeatureCollection")
    features = doc.get("features")
    if not isinstance(features, list) or not features:
        raise MalformedResponseError("FeatureCollection has no features")
    geom = features[0].get("geometry") if isinstance(features[0], dict) else None
    if geom is None:
        raise MalformedResponseError("first feature has no geometry")
    try:
        return multipolygon_from_geometry(geom, where="isochrone response")
    except DriveshedError as exc:
        raise MalformedResponseError(f"unusable geometry: {exc}")
