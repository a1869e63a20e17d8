"""Cumulative case/death time series in the upstream wide-CSV layout and
the transforms behind every displayed number: daily differences, rolling
7-day sums, and scope totals.

Counts stay plain Python integers end to end; nothing here rounds.
Rows with no FIPS (``Unassigned``, ``Out of TX``) keep ``fips=None`` and
still carry their state, so they count toward state and national totals
but can never be picked up by a map query.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
import re
from dataclasses import dataclass, field
from typing import IO, Iterable, Optional

from .errors import (
    DuplicateFipsError,
    HeaderMismatchError,
    MalformedRowError,
    NonContiguousDatesError,
    UnknownFipsError,
    UnknownStateError,
    WindowNonPositiveError,
)

# scope marker for national totals
NATION = object()

_DATE_COL = re.compile(r"^\d{1,2}/\d{1,2}/\d{2}$")
_FIPS_CELL = re.compile(r"^([0-9]+)(?:\.0+)?$")

REQUIRED_COLS = ("UID", "iso2", "iso3", "code3", "FIPS", "Admin2",
                 "Province_State", "Country_Region", "Lat", "Long_", "Combined_Key")


@dataclass(frozen=True)
class DateIndex:
    dates: tuple[str, ...]      # ISO-8601, consecutive calendar days

    def __post_init__(self):
        object.__setattr__(self, "dates", tuple(self.dates))
        if not self.dates:
            raise NonContiguousDatesError("date index is empty")
        prev = _dt.date.fromisoformat(self.dates[0])
        for d in self.dates[1:]:
            cur = _dt.date.fromisoformat(d)
            if cur != prev + _dt.timedelta(days=1):
                raise NonContiguousDatesError(f"gap between {prev} and {cur}")
            prev = cur

    def __len__(self) -> int:
        return len(self.dates)


@dataclass(frozen=True)
class CountySeries:
    fips: Optional[str]         # None marks a row with no geography
    name: str
    state: str
    cumulative: tuple[int, ...]

    @property
    def geoless(self) -> bool:
        return self.fips is None

    @property
    def latest(self) -> int:
        return self.cumulative[-1]


@dataclass(frozen=True)
class SeriesTable:
    metric: str                 # "cases" or "deaths"
    index: DateIndex
    rows: tuple[CountySeries, ...]
    # advisory only: excluded from equality so round-trips compare clean
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "warnings", tuple(self.warnings))
        seen = set()
        for r in self.rows:
            if len(r.cumulative) != len(self.index):
                raise NonContiguousDatesError(
                    f"row {r.name!r} has {len(r.cumulative)} values for "
                    f"{len(self.index)} dates")
            if r.fips is not None:
                if r.fips in seen:
                    raise DuplicateFipsError(f"fips {r.fips} appears twice")
                seen.add(r.fips)

    @property
    def by_fips(self) -> dict[str, CountySeries]:
        return {r.fips: r for r in self.rows if r.fips is not None}

    def states(self) -> set[str]:
        return {r.state for r in self.rows}


@dataclass(frozen=True)
class AggregateSeries:
    index: DateIndex
    daily: tuple[int, ...]
    rolling7: tuple[int, ...]
    cumulative_latest: int


def _mdy_to_iso(text: str) -> str:
    m, d, y = text.split("/")
    return _dt.date(2000 + int(y), int(m), int(d)).isoformat()


def _iso_to_mdy(iso: str) -> str:
    d = _dt.date.fromisoformat(iso)
    return f"{d.month}/{d.day}/{d.strftime('%y')}"


def parse_csse(source, metric: str) -> SeriesTable:
    """Read a wide cumulative CSV.

    The header must contain the standard metadata columns (plus
    Population for deaths files) followed by M/D/YY date columns; extra
    metadata columns are tolerated. Literal negative cells are clamped to
    the previous value and reported in table.warnings rather than
    failing the load.
    """
    if metric not in ("cases", "deaths"):
        raise ValueError(f"metric must be cases or deaths, got {metric!r}")
    if hasattr(source, "read"):
        rows = list(csv.reader(source))
    else:
        with open(source, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    if not rows:
        raise HeaderMismatchError("file is empty")

    header = rows[0]
    missing = [c for c in REQUIRED_COLS if c not in header]
    if metric == "deaths" and "Population" not in header:
        missing.append("Population")
    if missing:
        raise HeaderMismatchError(f"missing columns: {', '.join(missing)}")

    first_date = next((i for i, c in enumerate(header) if _DATE_COL.match(c)), None)
    if first_date is None:
        raise HeaderMismatchError("no M/D/YY date columns found")
    trailing = [c for c in header[first_date:] if not _DATE_COL.match(c)]
    if trailing:
        raise HeaderMismatchError(f"non-date columns after dates: {trailing}")

    index = DateIndex(dates=tuple(_mdy_to_iso(c) for c in header[first_date:]))
    col = {name: header.index(name) for name in REQUIRED_COLS}

    out: list[CountySeries] = []
    warnings: list[str] = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise MalformedRowError(
                f"line {lineno}: {len(row)} fields, header has {len(header)}")
        fips = _normalize_fips_cell(row[col["FIPS"]], lineno)
        name = row[col["Admin2"]].strip()
        state = row[col["Province_State"]].strip()
        values = []
        prev = 0
        for k, cell in enumerate(row[first_date:]):
            try:
                num = float(cell)
            except ValueError as exc:
                raise MalformedRowError(f"line {lineno}: bad count {cell!r}") from exc
            if not num.is_integer():
                raise MalformedRowError(f"line {lineno}: non-integer count {cell!r}")
            v = int(num)
            if v < 0:
                warnings.append(
                    f"line {lineno} ({name or state}): negative cumulative {v} "
                    f"on {index.dates[k]} clamped to {prev}")
                v = prev
            values.append(v)
            prev = v
        out.append(CountySeries(fips=fips, name=name, state=state,
                                cumulative=tuple(values)))
    return SeriesTable(metric=metric, index=index, rows=tuple(out),
                       warnings=tuple(warnings))


def _normalize_fips_cell(cell: str, lineno: int) -> Optional[str]:
    text = cell.strip()
    if not text:
        return None
    m = _FIPS_CELL.match(text)
    if not m:
        raise MalformedRowError(f"line {lineno}: bad FIPS cell {cell!r}")
    digits = str(int(m.group(1)))
    if len(digits) > 5:
        raise MalformedRowError(f"line {lineno}: FIPS {cell!r} over 5 digits")
    return digits.zfill(5)


def serialize_csse(table: SeriesTable, sink: Optional[IO[str]] = None) -> str:
    """Inverse of parse_csse; parse(serialize(t)) == t for any table this
    produces."""
    header = list(REQUIRED_COLS)
    if table.metric == "deaths":
        header.append("Population")
    header += [_iso_to_mdy(d) for d in table.index.dates]
    lines = [header]
    for r in table.rows:
        fips = r.fips or ""
        uid = f"840{fips}" if fips else "84090000"
        cells = [uid, "US", "USA", "840", fips, r.name, r.state, "US",
                 "", "", f"{r.name}, {r.state}, US"]
        if table.metric == "deaths":
            cells.append("0")
        cells += [str(v) for v in r.cumulative]
        lines.append(cells)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(lines)
    text = buf.getvalue()
    if sink is not None:
        sink.write(text)
    return text


def to_daily(cumulative: Iterable[int]) -> tuple[int, ...]:
    """First differences with data corrections clamped at zero."""
    c = list(cumulative)
    if not c:
        return ()
    out = [c[0]]
    for a, b in zip(c, c[1:]):
        out.append(max(0, b - a))
    return tuple(out)


def rolling_sum(daily: Iterable[int], window: int = 7) -> tuple[int, ...]:
    """Trailing window sums; the first window-1 entries use the days
    available so far."""
    if window < 1:
        raise WindowNonPositiveError(f"window must be >= 1, got {window}")
    d = list(daily)
    out = []
    acc = 0
    for i, v in enumerate(d):
        acc += v
        if i >= window:
            acc -= d[i - window]
        out.append(acc)
    return tuple(out)


def aggregate(table: SeriesTable, fips_set: Iterable[str]) -> AggregateSeries:
    """Sum the members' cumulative series, then difference and roll."""
    wanted = sorted(set(fips_set))
    by_fips = table.by_fips
    unknown = [f for f in wanted if f not in by_fips]
    if unknown:
        raise UnknownFipsError(unknown)
    total = [0] * len(table.index)
    for f in wanted:
        for i, v in enumerate(by_fips[f].cumulative):
            total[i] += v
    daily = to_daily(total)
    return AggregateSeries(index=table.index, daily=daily,
                           rolling7=rolling_sum(daily, 7),
                           cumulative_latest=total[-1])


def latest_totals(table: SeriesTable, scope) -> int:
    """Sum of final cumulative values over a scope: an iterable of FIPS
    codes, a state name, or the NATION marker. State scope includes that
    state's geography-less rows; FIPS scope cannot reach them."""
    if scope is NATION:
        return sum(r.latest for r in table.rows)
    if isinstance(scope, str):
        rows = [r for r in table.rows if r.state == scope]
        if not rows:
            raise UnknownStateError(f"no rows for state {scope!r}")
        return sum(r.latest for r in rows)
    by_fips = table.by_fips
    wanted = sorted(set(scope))
    unknown = [f for f in wanted if f not in by_fips]
    if unknown:
        raise UnknownFipsError(unknown)
    return sum(by_fips[f].latest for f in wanted)


def summary_sentence(local_cases: int, local_deaths: int,
                     state_cases: int, state_deaths: int, state_name: str,
                     nation_cases: int, nation_deaths: int) -> tuple[str, str, str]:
    """The three display lines, comma-grouped."""
    return (
        f"Since January, there have been {local_cases:,} cases and "
        f"{local_deaths:,} deaths within an hour's drive of you.",
        f"{state_name} has had at least {state_cases:,} cases and "
        f"{state_deaths:,} deaths so far.",
        f"{nation_cases:,} Americans have been infected, {nation_deaths:,} have died.",
    )
