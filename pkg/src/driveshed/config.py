"""Service configuration from a flat key=value file.

The format is a deliberately plain subset of TOML: one `key = value`
per line, # comments, optional double quotes around values. Paths are
resolved relative to the directory holding the config file, so a config
tree can be moved wholesale.

API keys never live in the file itself; `geocoder.api_key_env` names an
environment variable to read at load time.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .counties import normalize_fips
from .errors import ConfigError, DriveshedError
from .isochrone import IsochroneConfig, MODES
from .providers import ProviderConfig

# CSSE reports the five NYC boroughs as one record; boundary files
# carry five polygons
DEFAULT_ALIASES = {
    "36005": "36061",
    "36047": "36061",
    "36081": "36061",
    "36085": "36061",
}

_PATH_KEYS = ("graph_nodes", "graph_edges", "counties", "cases_csv",
              "deaths_csv", "gazetteer", "commitment_log")


@dataclass(frozen=True)
class AppConfig:
    graph_nodes: Path
    graph_edges: Path
    counties: Path
    cases_csv: Path
    deaths_csv: Path
    gazetteer: Path
    commitment_log: Path
    isochrone: IsochroneConfig = field(default_factory=IsochroneConfig)
    refresh_interval: float = 86400.0
    listen_host: str = "127.0.0.1"
    listen_port: int = 8000
    cors_origin: Optional[str] = None
    aliases: dict = field(default_factory=lambda: dict(DEFAULT_ALIASES))
    geocoder: Optional[ProviderConfig] = None
    isochrone_provider: Optional[ProviderConfig] = None

    def __post_init__(self):
        if not self.refresh_interval > 0:
            raise ConfigError(
                f"refresh_interval must be > 0, got {self.refresh_interval}")
        if not 0 < self.listen_port < 65536:
            raise ConfigError(f"listen_port out of range: {self.listen_port}")

    def resolve_fips(self, fips: str) -> str:
        return self.aliases.get(fips, fips)


def _parse_lines(path: Path) -> dict[str, str]:
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(),
                                 start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key = value")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if len(value) >= 2 and value[0] == '"' and value[-1] == '"':
            value = value[1:-1]
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        if key in pairs:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        pairs[key] = value
    return pairs


def _take_float(pairs, key, default):
    if key not in pairs:
        return default
    try:
        return float(pairs.pop(key))
    except ValueError as exc:
        raise ConfigError(f"bad number for {key}: {exc}")


def _take_int(pairs, key, default):
    if key not in pairs:
        return default
    try:
        return int(pairs.pop(key))
    except ValueError as exc:
        raise ConfigError(f"bad integer for {key}: {exc}")


def _take_provider(pairs, prefix) -> Optional[ProviderConfig]:
    keys = [k for k in pairs if k.startswith(prefix + ".")]
    if not keys:
        return None
    sub = {k[len(prefix) + 1:]: pairs.pop(k) for k in keys}
    base_url = sub.pop("base_url", "")
    if not base_url:
        raise ConfigError(f"{prefix}.base_url is required when any "
                          f"{prefix}.* key is set")
    api_key = ""
    env_name = sub.pop("api_key_env", "")
    if env_name:
        api_key = os.environ.get(env_name, "")
    kwargs = {"base_url": base_url, "api_key": api_key}
    if "timeout" in sub:
        try:
            kwargs["timeout"] = float(sub.pop("timeout"))
        except ValueError as exc:
            raise ConfigError(f"bad number for {prefix}.timeout: {exc}")
    if "retry_count" in sub:
        try:
            kwargs["retry_count"] = int(sub.pop("retry_count"))
        except ValueError as exc:
            raise ConfigError(f"bad integer for {prefix}.retry_count: {exc}")
    if "key_in_header" in sub:
        kwargs["key_in_header"] = _parse_bool(sub.pop("key_in_header"),
                                              f"{prefix}.key_in_header")
    if sub:
        raise ConfigError(f"unknown keys: "
                          f"{', '.join(prefix + '.' + k for k in sorted(sub))}")
    return ProviderConfig(**kwargs)


def _parse_bool(value, key):
    if value in ("true", "1", "yes"):
        return True
    if value in ("false", "0", "no"):
        return False
    raise ConfigError(f"bad boolean for {key}: {value!r}")


def load_config(path) -> AppConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    pairs = _parse_lines(path)
    base = path.resolve().parent

    paths = {}
    for key in _PATH_KEYS:
        if key not in pairs:
            raise ConfigError(f"{path}: missing required key {key!r}")
        paths[key] = (base / pairs.pop(key)).resolve()

    iso_kwargs = {}
    budget = _take_float(pairs, "budget", None)
    if budget is not None:
        iso_kwargs["budget"] = budget
    cell = _take_float(pairs, "cell_size", None)
    if cell is not None:
        iso_kwargs["cell_size"] = cell
    snap = _take_float(pairs, "snap_radius", None)
    if snap is not None:
        iso_kwargs["snap_radius"] = snap
    dilation = _take_int(pairs, "dilation", None)
    if dilation is not None:
        iso_kwargs["dilation"] = dilation
    if "mode" in pairs:
        mode = pairs.pop("mode")
        if mode not in MODES:
            raise ConfigError(f"mode must be one of {', '.join(MODES)}, "
                              f"got {mode!r}")
        iso_kwargs["mode"] = mode

    aliases = dict(DEFAULT_ALIASES)
    if _parse_bool(pairs.pop("default_aliases", "true"), "default_aliases") is False:
        aliases = {}
    for key in [k for k in pairs if k.startswith("alias.")]:
        try:
            src = normalize_fips(key[len("alias."):])
            dst = normalize_fips(pairs.pop(key))
        except DriveshedError as exc:
            raise ConfigError(f"bad alias entry {key!r}: {exc}")
        aliases[src] = dst

    cfg_kwargs = dict(
        isochrone=IsochroneConfig(**iso_kwargs),
        refresh_interval=_take_float(pairs, "refresh_interval", 86400.0),
        listen_host=pairs.pop("listen_host", "127.0.0.1"),
        listen_port=_take_int(pairs, "listen_port", 8000),
        cors_origin=pairs.pop("cors_origin", None),
        aliases=aliases,
        geocoder=_take_provider(pairs, "geocoder"),
        isochrone_provider=_take_provider(pairs, "isochrone_provider"),
    )
    if pairs:
        raise ConfigError(f"{path}: unknown keys: {', '.join(sorted(pairs))}")
    return AppConfig(**paths, **cfg_kwargs)
