"""Pledge records and the public counter.

Storage is a newline-delimited JSON log, append-only, flushed and
fsynced before any append is acknowledged. The counter is whatever a
replay of that log says, cached in memory; a torn trailing line from a
crash mid-write was never acknowledged, so replay drops it and the next
append truncates it away first.

Repeat visitors are counted again on purpose: the service this mirrors
had no dedup, and the counter's meaning is commitments made, not people.
"""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from pathlib import Path

from .errors import (
    AllItemsFalseError,
    StorageFailureError,
    UnknownChannelError,
    UnknownIdError,
)

ITEM_NAMES = ("leave_home_less", "wash_hands", "distance_6ft",
              "wear_mask", "stay_connected")
CHANNELS = ("facebook", "twitter")


@dataclass(frozen=True)
class CommitmentItems:
    leave_home_less: bool
    wash_hands: bool
    distance_6ft: bool
    wear_mask: bool
    stay_connected: bool

    def __post_init__(self):
        for name in ITEM_NAMES:
            if not isinstance(getattr(self, name), bool):
                raise TypeError(f"{name} must be a bool")
        if not any(self.as_list()):
            raise AllItemsFalseError(
                "a commitment must include at least one item")

    def as_list(self) -> list[bool]:
        return [getattr(self, name) for name in ITEM_NAMES]

    @classmethod
    def from_list(cls, values) -> "CommitmentItems":
        vals = list(values)
        if len(vals) != len(ITEM_NAMES):
            raise AllItemsFalseError(
                f"expected {len(ITEM_NAMES)} items, got {len(vals)}")
        if not all(isinstance(v, bool) for v in vals):
            raise AllItemsFalseError("items must be booleans")
        return cls(*vals)


@dataclass(frozen=True)
class CommitReceipt:
    id: str
    new_total: int


def _utc_iso(ts: float) -> str:
    t = time.gmtime(ts)
    ms = int((ts % 1) * 1000)
    return (f"{t.tm_year:04d}-{t.tm_mon:02d}-{t.tm_mday:02d}"
            f"T{t.tm_hour:02d}:{t.tm_min:02d}:{t.tm_sec:02d}.{ms:03d}Z")


class CommitmentStore:
    """Single serialized writer over one log file. Opening replays the
    log; the instance then holds the file for appends until close()."""

    def __init__(self, path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._total = 0
        self._ids: set[str] = set()
        self._shares: dict[str, int] = {c: 0 for c in CHANNELS}
        self._seq = 0
        self._last_ts = 0.0
        self._replay()
        # unbuffered: no user-space buffer to replay stale bytes from
        # after a failed append
        self._fh = open(self.path, "ab", buffering=0)

    # -- startup ------------------------------------------------------------

    def _replay(self) -> None:
        if not self.path.exists():
            return
        raw = self.path.read_bytes()
        valid = len(raw)
        if raw and not raw.endswith(b"\n"):
            # torn final write: keep only fully terminated lines
            valid = raw.rfind(b"\n") + 1
        for lineno, line in enumerate(raw[:valid].splitlines(), start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise StorageFailureError(
                    f"{self.path}: corrupt line {lineno}: {exc}")
            self._apply(rec, lineno)
        if valid != len(raw):
            with open(self.path, "r+b") as fh:
                fh.truncate(valid)

    def _apply(self, rec, lineno: int) -> None:
        kind = rec.get("kind") if isinstance(rec, dict) else None
        if kind == "commit":
            cid = rec.get("id")
            items = rec.get("items")
            if (not isinstance(cid, str) or cid in self._ids
                    or not isinstance(items, list) or len(items) != 5
                    or not all(isinstance(v, bool) for v in items)
                    or not any(items)):
                raise StorageFailureError(
                    f"{self.path}: bad commit record on line {lineno}")
            self._ids.add(cid)
            self._total += 1
        elif kind == "share":
            cid = rec.get("id")
            channel = rec.get("channel")
            if cid not in self._ids or channel not in CHANNELS:
                raise StorageFailureError(
                    f"{self.path}: bad share record on line {lineno}")
            self._shares[channel] += 1
        else:
            raise StorageFailureError(
                f"{self.path}: unknown record kind on line {lineno}")

    # -- write path ----------------------------------------------------------

    def _append(self, rec: dict) -> None:
        """All-or-nothing append: flush and fsync before returning, roll
        the file back on any failure so the log never holds an
        unacknowledged record."""
        data = (json.dumps(rec, separators=(",", ":")) + "\n").encode()
        fd = self._fh.fileno()
        start = os.fstat(fd).st_size
        try:
            written = self._fh.write(data)
            if written != len(data):
                raise OSError(f"short write ({written} of {len(data)} bytes)")
            os.fsync(fd)
        except OSError as exc:
            try:
                os.ftruncate(fd, start)
            except OSError:
                pass    # restart replay drops the torn tail anyway
            raise StorageFailureError(f"append failed: {exc}")

    def _stamp(self) -> str:
        now = time.time()
        # wall clock may step backwards; log order must not
        self._last_ts = max(now, self._last_ts)
        return _utc_iso(self._last_ts)

    def _new_id(self, ts: str) -> str:
        while True:
            cid = f"{ts}-{self._seq:06d}"
            self._seq += 1
            if cid not in self._ids:
                return cid

    def close(self) -> None:
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    # -- public api ----------------------------------------------------------

    @property
    def total(self) -> int:
        return self._total


def make_commitment(store: CommitmentStore,
                    items: CommitmentItems) -> CommitReceipt:
    """Durably record one pledge and bump the public counter."""
    with store._lock:
        ts = store._stamp()
        cid = store._new_id(ts)
        store._append({"t": ts, "id": cid, "kind": "commit",
                       "items": items.as_list()})
        store._ids.add(cid)
        store._total += 1
        return CommitReceipt(id=cid, new_total=store._total)


def total_commitments(store: CommitmentStore) -> int:
    """Lock-free read of the cached counter; may trail an in-flight
    append by one."""
    return store._total


def record_share(store: CommitmentStore, commitment_id: str,
                 channel: str) -> bool:
    """Log a social share against an existing commitment. Never touches
    the commitment counter."""
    if channel not in CHANNELS:
        raise UnknownChannelError(
            f"channel must be one of {', '.join(CHANNELS)}, got {channel!r}")
    with store._lock:
        if commitment_id not in store._ids:
            raise UnknownIdError(f"no commitment {commitment_id!r}")
        store._append({"t": store._stamp(), "id": commitment_id,
                       "kind": "share", "channel": channel})
        store._shares[channel] += 1
        return True


def share_tallies(store: CommitmentStore) -> dict[str, int]:
    """Per-channel share counts as replayed from the log."""
    with store._lock:
        return dict(store._shares)
