import pytest

from driveshed.errors import MalformedGeoJSONError
from driveshed.geojson import (
    feature,
    feature_collection,
    geometry_from_multipolygon,
    multipolygon_from_geometry,
)

SQUARE = {"type": "Polygon",
          "coordinates": [[[0, 0], [2, 0], [2, 2], [0, 2], [0, 0]]]}
DONUT = {"type": "Polygon",
         "coordinates": [[[0, 0], [4, 0], [4, 4], [0, 4], [0, 0]],
                         [[1, 1], [3, 1], [3, 3], [1, 3], [1, 1]]]}


def test_polygon_geometry():
    mp = multipolygon_from_geometry(SQUARE)
    assert len(mp.polygons) == 1
    assert mp.polygons[0].holes == ()
    assert len(mp.polygons[0].exterior.points) == 5


def test_holes_preserved():
    mp = multipolygon_from_geometry(DONUT)
    assert len(mp.polygons[0].holes) == 1


def test_multipolygon_geometry():
    geom = {"type": "MultiPolygon", "coordinates": [SQUARE["coordinates"]] * 2}
    # two identical parts is geometrically silly but structurally valid
    mp = multipolygon_from_geometry(geom)
    assert len(mp.polygons) == 2


def test_round_trip():
    mp = multipolygon_from_geometry(DONUT)
    out = geometry_from_multipolygon(mp)
    assert out["type"] == "MultiPolygon"
    assert out["coordinates"] == [DONUT["coordinates"]]
    assert multipolygon_from_geometry(out) == mp


@pytest.mark.parametrize("geom", [
    None,
    {"type": "Point", "coordinates": [0, 0]},
    {"type": "Polygon", "coordinates": []},
    {"type": "Polygon", "coordinates": [[[0, 0], [1, 0], [0, 0]]]},
    {"type": "Polygon", "coordinates": [[[0, 0], [1, "x"], [1, 1], [0, 0]]]},
    {"type": "MultiPolygon", "coordinates": []},
    {"type": "Polygon", "coordinates": [[[0, 0], [1, 0], [1, 1], [0, 1]]]},
])
def test_rejects_malformed(geom):
    with pytest.raises(MalformedGeoJSONError):
        multipolygon_from_geometry(geom)


def test_feature_wrappers():
    f = feature(SQUARE, {"fips": "48001"})
    fc = feature_collection([f])
    assert fc["type"] == "FeatureCollection"
    assert fc["features"][0]["properties"]["fips"] == "48001"
    assert fc["features"][0]["geometry"] is SQUARE
