"""Atomic data refresh unit.

All request handlers read one immutable DataSnapshot through a swappable
holder, so a refresh can never leave a response half on old data and
half on new. data_version is a hash of the input file bytes: identical
files load to the identical version string, which is what lets clients
and tests notice a refresh at all.
"""

from __future__ import annotations

import hashlib
import logging
import threading
import time
from dataclasses import dataclass

from .counties import CountyBoundarySet, load_counties
from .errors import DriveshedError, SnapshotError
from .series import SeriesTable, parse_csse

log = logging.getLogger("driveshed.snapshot")


@dataclass(frozen=True)
class DataSnapshot:
    counties: CountyBoundarySet
    cases: SeriesTable
    deaths: SeriesTable
    loaded_at: float            # unix seconds
    data_version: str


def _file_hash(h, path):
    with open(path, "rb") as fh:
        while True:
            chunk = fh.read(1 << 16)
            if not chunk:
                break
            h.update(chunk)
    h.update(b"\x00")


def build_snapshot(cfg) -> DataSnapshot:
    """Load and cross-validate counties + both series files. Any failure
    raises without side effects, so a previously published snapshot
    stays good."""
    h = hashlib.sha256()
    try:
        _file_hash(h, cfg.counties)
        counties = load_counties(cfg.counties)
    except OSError as exc:
        raise SnapshotError(f"{cfg.counties}: {exc}")
    except DriveshedError as exc:
        raise SnapshotError(f"{cfg.counties}: {exc}") from exc

    tables = {}
    for metric, path in (("cases", cfg.cases_csv), ("deaths", cfg.deaths_csv)):
        try:
            _file_hash(h, path)
            tables[metric] = parse_csse(path, metric)
        except OSError as exc:
            raise SnapshotError(f"{path}: {exc}")
        except DriveshedError as exc:
            raise SnapshotError(f"{path}: {exc}") from exc

    # every boundary, after aliasing, must resolve in both tables, so a
    # request can never hit an unknown-fips hole mid-pipeline
    for metric in ("cases", "deaths"):
        known = set(tables[metric].by_fips)
        missing = sorted(
            f for f in counties.counties
            if cfg.resolve_fips(f) not in known)
        if missing:
            raise SnapshotError(
                f"{getattr(cfg, metric + '_csv')}: no {metric} series for "
                f"counties: {', '.join(missing)}")

    for w in tables["cases"].warnings + tables["deaths"].warnings:
        log.warning("data correction: %s", w)

    return DataSnapshot(counties=counties, cases=tables["cases"],
                        deaths=tables["deaths"], loaded_at=time.time(),
                        data_version=h.hexdigest()[:16])


class SnapshotHolder:
    """One published snapshot behind an atomic reference."""

    def __init__(self, snap: DataSnapshot):
        self._snap = snap

    def get(self) -> DataSnapshot:
        return self._snap

    def swap(self, snap: DataSnapshot) -> None:
        self._snap = snap


def refresh_once(holder: SnapshotHolder, cfg) -> bool:
    """One refresh attempt: publish on success, keep the old snapshot
    and log on failure. Returns whether the swap happened."""
    try:
        snap = build_snapshot(cfg)
    except SnapshotError as exc:
        log.warning("refresh failed, keeping %s: %s",
                    holder.get().data_version, exc)
        return False
    holder.swap(snap)
    log.info("refreshed to %s", snap.data_version)
    return True


def start_refresh_thread(holder: SnapshotHolder, cfg,
                         stop: threading.Event) -> threading.Thread:
    """Daemon loop: wait the configured interval, refresh, repeat until
    the stop event fires."""

    def loop():
        while not stop.wait(cfg.refresh_interval):
            refresh_once(holder, cfg)

    t = threading.Thread(target=loop, name="snapshot-refresh", daemon=True)
    t.start()
    return t
