import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geoaccess import GeoPoint, ValidationError, build_index, haversine_miles, within_radius

from oracles import ref_haversine

# Frozen before the build by an independent haversine script.
BALTIMORE_ANNAPOLIS_MILES = 22.496019573570347

lat_strategy = st.floats(min_value=-89.0, max_value=89.0)
lon_strategy = st.floats(min_value=-179.0, max_value=179.0)


def test_identity_distance_is_zero():
    p = GeoPoint(39.0, -76.0)
    assert haversine_miles(p, p) == 0.0


def test_one_degree_longitude_at_equator():
    d = haversine_miles(GeoPoint(0.0, 0.0), GeoPoint(0.0, 1.0))
    assert d == pytest.approx(69.0933, abs=1e-3)
    assert d == pytest.approx(3958.7613 * math.pi / 180.0, rel=1e-12)


def test_reference_city_pair_matches_scripted_oracle():
    d = haversine_miles(GeoPoint(39.2904, -76.6122), GeoPoint(38.9784, -76.4922))
    assert d == pytest.approx(BALTIMORE_ANNAPOLIS_MILES, rel=1e-6)


@given(lat_strategy, lon_strategy, lat_strategy, lon_strategy)
def test_distance_symmetry(lat1, lon1, lat2, lon2):
    a, b = GeoPoint(lat1, lon1), GeoPoint(lat2, lon2)
    assert haversine_miles(a, b) == haversine_miles(b, a)


@settings(max_examples=50)
@given(st.lists(st.tuples(lat_strategy, lon_strategy), min_size=3, max_size=3))
def test_triangle_inequality(coords):
    a, b, c = (GeoPoint(la, lo) for la, lo in coords)
    ab = haversine_miles(a, b)
    bc = haversine_miles(b, c)
    ac = haversine_miles(a, c)
    assert ac <= ab + bc + 1e-9 * max(1.0, ac)


@pytest.mark.parametrize("lat,lon", [(90.5, 0.0), (-91.0, 0.0), (0.0, 180.1), (0.0, -200.0)])
def test_out_of_range_points_rejected(lat, lon):
    with pytest.raises(ValidationError):
        GeoPoint(lat, lon)


def test_empty_index_returns_empty():
    index = build_index([])
    assert within_radius(index, GeoPoint(0.0, 0.0), 100.0) == []


def test_index_holds_all_points():
    pts = [("a", GeoPoint(0.0, 0.0)), ("b", GeoPoint(1.0, 1.0)), ("c", GeoPoint(2.0, 2.0))]
    assert len(build_index(pts)) == 3


def test_duplicate_id_rejected_by_name():
    pts = [("a", GeoPoint(0.0, 0.0)), ("a", GeoPoint(1.0, 1.0))]
    with pytest.raises(ValidationError, match="'a'"):
        build_index(pts)


def test_zero_radius_excluding_center_is_empty():
    index = build_index([("a", GeoPoint(1.0, 1.0))])
    assert within_radius(index, GeoPoint(0.0, 0.0), 0.0) == []


def test_zero_radius_on_coincident_point():
    index = build_index([("a", GeoPoint(1.0, 1.0)), ("b", GeoPoint(2.0, 2.0))])
    assert within_radius(index, GeoPoint(1.0, 1.0), 0.0) == [("a", 0.0)]


def test_negative_radius_rejected():
    index = build_index([("a", GeoPoint(0.0, 0.0))])
    with pytest.raises(ValidationError):
        within_radius(index, GeoPoint(0.0, 0.0), -1.0)


def _brute_force(points, center, radius):
    hits = []
    for pid, p in points:
        d = haversine_miles(center, p)
        if d <= radius:
            hits.append((pid, d))
    hits.sort(key=lambda pair: (pair[1], pair[0]))
    return hits


@pytest.mark.parametrize("radius", [15.0, 0.5, 120.0])
def test_index_matches_linear_scan(radius):
    rng = np.random.default_rng(7)
    points = [
        (f"p{i:04d}", GeoPoint(float(rng.uniform(37.0, 40.0)), float(rng.uniform(-79.0, -75.0))))
        for i in range(1000)
    ]
    index = build_index(points)
    for _ in range(50):
        center = GeoPoint(float(rng.uniform(37.0, 40.0)), float(rng.uniform(-79.0, -75.0)))
        assert within_radius(index, center, radius) == _brute_force(points, center, radius)


def test_boundary_distance_is_included():
    pts = [("edge", GeoPoint(0.0, 1.0)), ("far", GeoPoint(0.0, 3.0))]
    index = build_index(pts)
    center = GeoPoint(0.0, 0.0)
    exact = haversine_miles(center, pts[0][1])
    hits = within_radius(index, center, exact)
    assert hits == [("edge", exact)]


def test_haversine_agrees_with_independent_formula():
    rng = np.random.default_rng(11)
    for _ in range(200):
        lat1, lat2 = rng.uniform(-80, 80, 2)
        lon1, lon2 = rng.uniform(-170, 170, 2)
        got = haversine_miles(GeoPoint(lat1, lon1), GeoPoint(lat2, lon2))
        assert got == pytest.approx(ref_haversine(lat1, lon1, lat2, lon2), rel=1e-12, abs=1e-12)
