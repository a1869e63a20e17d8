"""Domain exceptions.

Every error that can cross a module boundary lives here so the HTTP layer
and the CLI can map exceptions to stable machine-readable codes without
importing half the package.
"""

from __future__ import annotations


class DriveshedError(Exception):
    """Base class for all domain errors. ``code`` is the wire-level identifier."""

    code = "INTERNAL"


# -- road graph ---------------------------------------------------------------

class MalformedRowError(DriveshedError):
    code = "MALFORMED_ROW"


class DanglingEdgeError(DriveshedError):
    code = "DANGLING_EDGE"


class EmptyGraphError(DriveshedError):
    code = "EMPTY_GRAPH"


class OriginOffNetworkError(DriveshedError):
    code = "ORIGIN_OFF_NETWORK"


class UnknownSourceError(DriveshedError):
    code = "UNKNOWN_SOURCE"


# -- county boundaries --------------------------------------------------------

class MalformedGeoJSONError(DriveshedError):
    code = "MALFORMED_GEOJSON"


class DuplicateFipsError(DriveshedError):
    code = "DUPLICATE_FIPS"


class MissingPropertyError(DriveshedError):
    code = "MISSING_PROPERTY"


# -- time series --------------------------------------------------------------

class HeaderMismatchError(DriveshedError):
    code = "HEADER_MISMATCH"


class NonContiguousDatesError(DriveshedError):
    code = "NON_CONTIGUOUS_DATES"


class WindowNonPositiveError(DriveshedError):
    code = "WINDOW_NON_POSITIVE"


class UnknownFipsError(DriveshedError):
    code = "UNKNOWN_FIPS"

    def __init__(self, offenders):
        self.offenders = sorted(offenders)
        super().__init__(f"unknown fips: {', '.join(self.offenders)}")


class UnknownStateError(DriveshedError):
    code = "UNKNOWN_STATE"


# -- geocoding ----------------------------------------------------------------

class EmptyQueryError(DriveshedError):
    code = "EMPTY_QUERY"


class PlaceNotFoundError(DriveshedError):
    code = "PLACE_NOT_FOUND"


class NetworkError(DriveshedError):
    code = "NETWORK"


class UnauthorizedError(DriveshedError):
    code = "UNAUTHORIZED"


class QuotaExceededError(DriveshedError):
    code = "QUOTA_EXCEEDED"


class NoMatchError(DriveshedError):
    code = "NO_MATCH"


class MalformedResponseError(DriveshedError):
    code = "MALFORMED_RESPONSE"


# -- commitments --------------------------------------------------------------

class AllItemsFalseError(DriveshedError):
    code = "ALL_ITEMS_FALSE"


class StorageFailureError(DriveshedError):
    code = "STORAGE_FAILURE"


class UnknownIdError(DriveshedError):
    code = "UNKNOWN_ID"


class UnknownChannelError(DriveshedError):
    code = "UNKNOWN_CHANNEL"


# -- service ------------------------------------------------------------------

class ConfigError(DriveshedError):
    code = "CONFIG"


class SnapshotError(DriveshedError):
    code = "SNAPSHOT"


class RegionUnresolvedError(DriveshedError):
    code = "REGION_UNRESOLVED"


class BadRequestError(DriveshedError):
    code = "BAD_REQUEST"
