"""Great-circle distance and nearby filtering."""

import random

import pytest
from hypothesis import given, strategies as st

from menulight.geo import GeoPoint, distance_meters, nearby

from geo_oracle import boundary_candidate, great_circle_meters

_lat = st.floats(min_value=-90, max_value=90, allow_nan=False)
_lon = st.floats(min_value=-180, max_value=180, allow_nan=False)


class TestGeoPoint:
    @pytest.mark.parametrize(
        "lat,lon",
        [(91, 0), (-91, 0), (0, 181), (0, -181), (float("nan"), 0), (0, float("inf"))],
    )
    def test_out_of_range_rejected(self, lat, lon):
        with pytest.raises(ValueError):
            GeoPoint(lat, lon)

    def test_bounds_are_inclusive(self):
        GeoPoint(90, 180)
        GeoPoint(-90, -180)


class TestDistance:
    def test_identical_points(self):
        p = GeoPoint(32.2319, -110.9501)
        assert distance_meters(p, p) == 0.0

    def test_one_degree_of_longitude_at_equator(self):
        # Oracle (mpmath spherical atan2 form, R = 6,371,000 m):
        # 111194.92664455874 m.
        d = distance_meters(GeoPoint(0, 0), GeoPoint(0, 1))
        assert d == pytest.approx(111194.92664455874, abs=1e-6)
        assert abs(d - 111_195) <= 1.0

    def test_small_northward_step(self):
        # Oracle value for 0.0045 degrees north of downtown Tucson:
        # 500.37716990053326 m.
        a = GeoPoint(32.2319, -110.9501)
        b = GeoPoint(32.2319 + 0.0045, -110.9501)
        d = distance_meters(a, b)
        assert d == pytest.approx(500.37716990053326, abs=1e-6)
        assert abs(d - 500.0) <= 2.0

    @given(_lat, _lon, _lat, _lon)
    def test_symmetric(self, lat1, lon1, lat2, lon2):
        a, b = GeoPoint(lat1, lon1), GeoPoint(lat2, lon2)
        assert distance_meters(a, b) == distance_meters(b, a)

    def test_agrees_with_oracle_within_10km_box(self):
        rng = random.Random(6371)
        center_lat, center_lon = 32.2319, -110.9501
        for _ in range(1000):
            lat1 = center_lat + rng.uniform(-0.045, 0.045)
            lon1 = center_lon + rng.uniform(-0.053, 0.053)
            lat2 = center_lat + rng.uniform(-0.045, 0.045)
            lon2 = center_lon + rng.uniform(-0.053, 0.053)
            ours = distance_meters(GeoPoint(lat1, lon1), GeoPoint(lat2, lon2))
            oracle = great_circle_meters(lat1, lon1, lat2, lon2)
            assert abs(ours - oracle) < 1.0

    def test_triangle_sanity_within_1km(self):
        rng = random.Random(7)
        base_lat, base_lon = 32.23, -110.95
        for _ in range(200):
            pts = [
                GeoPoint(base_lat + rng.uniform(0, 0.009), base_lon + rng.uniform(0, 0.009))
                for _ in range(3)
            ]
            a, b, c = pts
            assert distance_meters(a, c) <= distance_meters(a, b) + distance_meters(b, c) + 1.0


class TestNearby:
    def _cluster(self):
        user = GeoPoint(32.2319, -110.9501)
        candidates = [
            ("Near One", GeoPoint(32.2322, -110.9501)),
            ("Near Two", GeoPoint(32.2340, -110.9501)),
            ("Far Away", GeoPoint(32.3319, -110.9501)),
        ]
        return user, candidates

    def test_filters_and_sorts_by_distance(self):
        user, candidates = self._cluster()
        result = nearby(user, candidates, 500)
        assert [name for name, _ in result] == ["Near One", "Near Two"]
        assert result[0][1] < result[1][1] < 500

    def test_just_inside_radius_included(self):
        user = GeoPoint(32.2319, -110.9501)
        # 0.0045 degrees north is ~500.377 m; shrink slightly to ~499.9 m.
        candidate = GeoPoint(32.2319 + 0.0045 * (499.9 / 500.377), -110.9501)
        d = distance_meters(user, candidate)
        assert 499.0 < d < 500.0
        assert nearby(user, [("Edge", candidate)], 500) == [("Edge", d)]

    def test_exactly_at_radius_excluded(self):
        """'Less than 500 meters' is strict: a candidate sitting exactly at
        the radius is not nearby, and one ulp more of radius admits it.

        Float 500.0 itself is unreachable for the distance function (its
        final multiply skips it), so the radius is pinned to the nearest
        achievable distance, 500 m to 13 significant digits.
        """
        import math

        def fn(lat1, lon1, lat2, lon2):
            return distance_meters(GeoPoint(lat1, lon1), GeoPoint(lat2, lon2))

        lat, d_star = boundary_candidate(fn, 500.0)
        user = GeoPoint(0.0, 0.0)
        candidate = GeoPoint(lat, 0.0)
        assert distance_meters(user, candidate) == d_star
        assert abs(d_star - 500.0) < 1e-9
        assert nearby(user, [("Boundary", candidate)], d_star) == []
        admitted = nearby(user, [("Boundary", candidate)], math.nextafter(d_star, math.inf))
        assert admitted == [("Boundary", d_star)]

    def test_just_outside_default_radius_excluded(self):
        user = GeoPoint(32.2319, -110.9501)
        # 0.0045 degrees north is ~500.377 m: outside a 500 m radius.
        candidate = GeoPoint(32.2319 + 0.0045, -110.9501)
        assert nearby(user, [("Outside", candidate)], 500.0) == []

    def test_empty_candidates(self):
        assert nearby(GeoPoint(0, 0), [], 500) == []

    def test_multiple_locations_collapse_to_minimum(self):
        user, _ = self._cluster()
        candidates = [
            ("Chain", GeoPoint(32.2340, -110.9501)),
            ("Chain", GeoPoint(32.2322, -110.9501)),
        ]
        result = nearby(user, candidates, 500)
        assert len(result) == 1
        name, d = result[0]
        assert name == "Chain"
        assert d == distance_meters(user, GeoPoint(32.2322, -110.9501))

    def test_ties_broken_by_name(self):
        user = GeoPoint(0, 0)
        spot = GeoPoint(0.001, 0)
        result = nearby(user, [("Zed", spot), ("Abe", spot)], 500)
        assert [name for name, _ in result] == ["Abe", "Zed"]

    def test_radius_must_be_positive(self):
        with pytest.raises(ValueError):
            nearby(GeoPoint(0, 0), [], 0)
        with pytest.raises(ValueError):
            nearby(GeoPoint(0, 0), [], -5)

    def test_monotone_in_radius_and_matches_brute_force(self):
        rng = random.Random(500)
        user = GeoPoint(32.2319, -110.9501)
        candidates = [
            (f"R{i:02d}", GeoPoint(32.2319 + rng.uniform(-0.02, 0.02), -110.9501 + rng.uniform(-0.02, 0.02)))
            for i in range(40)
        ]
        previous: list = []
        for radius in (100, 250, 500, 1000, 2000, 4000):
            result = nearby(user, candidates, radius)
            brute = sorted(
                (
                    (name, distance_meters(user, point))
                    for name, point in candidates
                    if distance_meters(user, point) < radius
                ),
                key=lambda pair: (pair[1], pair[0]),
            )
            assert result == brute
            assert {name for name, _ in previous} <= {name for name, _ in result}
            previous = result
