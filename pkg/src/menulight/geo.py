"""Great-circle distance and nearby-restaurant filtering.

Haversine on a spherical Earth (mean radius 6,371,000 m) -- sub-meter
error at the few-hundred-meter scale this serves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

EARTH_RADIUS_M = 6_371_000.0

# Restaurants strictly closer than this many meters count as nearby.
DEFAULT_NEARBY_RADIUS_M = 500.0


@dataclass(frozen=True)
class GeoPoint:
    latitude: float
    longitude: float

    def __post_init__(self):
        if not (math.isfinite(self.latitude) and -90.0 <= self.latitude <= 90.0):
            raise ValueError(f"latitude out of range: {self.latitude!r}")
        if not (math.isfinite(self.longitude) and -180.0 <= self.longitude <= 180.0):
            raise ValueError(f"longitude out of range: {self.longitude!r}")


def distance_meters(a: GeoPoint, b: GeoPoint) -> float:
    """Haversine great-circle distance between two points, in meters."""
    lat1 = math.radians(a.latitude)
    lat2 = math.radians(b.latitude)
    dlat = math.radians(b.latitude - a.latitude)
    dlon = math.radians(b.longitude - a.longitude)

    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return EARTH_RADIUS_M * 2 * math.asin(min(1.0, math.sqrt(h)))


def nearby(
    user: GeoPoint,
    candidates: Iterable[tuple[str, GeoPoint]],
    radius: float = DEFAULT_NEARBY_RADIUS_M,
) -> list[tuple[str, float]]:
    """Restaurants strictly closer than `radius` meters to `user`.

    Candidates are (restaurant, location) pairs; a restaurant listed with
    several locations appears at most once, at its minimum distance.
    Results sort ascending by distance, ties broken by restaurant name.
    """
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius!r}")

    closest: dict[str, float] = {}
    for name, point in candidates:
        d = distance_meters(user, point)
        if name not in closest or d < closest[name]:
            closest[name] = d

    hits = [(name, d) for name, d in closest.items() if d < radius]
    hits.sort(key=lambda pair: (pair[1], pair[0]))
    return hits
