"""Geographic primitives: points, great-circle distance, radius queries.

Distances are great-circle miles on a sphere of radius
``EARTH_RADIUS_MILES`` (the IUGG mean radius). The value is fixed as a
constant so that results are bit-reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .errors import ValidationError

EARTH_RADIUS_MILES = 3958.7613

__all__ = [
    "EARTH_RADIUS_MILES",
    "GeoPoint",
    "SpatialIndex",
    "haversine_miles",
    "build_index",
    "within_radius",
]


@dataclass(frozen=True)
class GeoPoint:
    """A latitude/longitude pair in degrees.

    Latitude must lie in [-90, 90] and longitude in [-180, 180];
    out-of-range values are rejected at construction.
    """

    lat: float
    lon: float

    def __post_init__(self):
        if not (math.isfinite(self.lat) and -90.0 <= self.lat <= 90.0):
            raise ValidationError(f"latitude {self.lat!r} outside [-90, 90]")
        if not (math.isfinite(self.lon) and -180.0 <= self.lon <= 180.0):
            raise ValidationError(f"longitude {self.lon!r} outside [-180, 180]")


def haversine_miles(a: GeoPoint, b: GeoPoint) -> float:
    """Great-circle distance between two points, in miles.

    Symmetric, non-negative, and zero exactly when the two points carry
    identical coordinates.
    """
    phi1 = math.radians(a.lat)
    phi2 = math.radians(b.lat)
    dphi = math.radians(b.lat - a.lat)
    dlam = math.radians(b.lon - a.lon)
    s = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_MILES * math.asin(min(1.0, math.sqrt(s)))


def _unit_vectors(lats, lons):
    """Unit sphere embedding of lat/lon arrays (radians input in degrees)."""
    phi = np.radians(np.asarray(lats, dtype=float))
    lam = np.radians(np.asarray(lons, dtype=float))
    cos_phi = np.cos(phi)
    return np.column_stack((cos_phi * np.cos(lam), cos_phi * np.sin(lam), np.sin(phi)))


class SpatialIndex:
    """Radius-query index over identified points.

    A k-d tree on the unit-sphere embedding prunes candidates; every
    candidate is then re-checked with :func:`haversine_miles`, so query
    results are exactly what a brute-force linear scan returns. The index
    is immutable after construction and safe to share across threads.
    """

    def __init__(self, points):
        ids = [pid for pid, _ in points]
        if len(set(ids)) != len(ids):
            seen = set()
            for pid in ids:
                if pid in seen:
                    raise ValidationError(f"duplicate id in spatial index: {pid!r}")
                seen.add(pid)
        self.ids = list(ids)
        self.points = [pt for _, pt in points]
        if self.points:
            xyz = _unit_vectors([p.lat for p in self.points], [p.lon for p in self.points])
            self._xyz = xyz * EARTH_RADIUS_MILES
            self._tree = cKDTree(self._xyz)
        else:
            self._xyz = np.empty((0, 3))
            self._tree = None

    def __len__(self) -> int:
        return len(self.ids)

    def within_radius(self, center: GeoPoint, radius: float):
        """All (id, distance) pairs with great-circle distance <= radius.

        The boundary is included. Results are sorted ascending by
        distance, ties broken by id.
        """
        if not (math.isfinite(radius) and radius >= 0.0):
            raise ValidationError(f"radius must be non-negative, got {radius!r}")
        if self._tree is None:
            return []
        # Chord length is monotone in arc length; query with a slightly
        # inflated chord bound, then filter with the exact haversine so the
        # result set matches a linear scan bit for bit.
        half_angle = min(radius / (2.0 * EARTH_RADIUS_MILES), math.pi / 2.0)
        chord = 2.0 * EARTH_RADIUS_MILES * math.sin(half_angle)
        cxyz = _unit_vectors([center.lat], [center.lon])[0] * EARTH_RADIUS_MILES
        candidates = self._tree.query_ball_point(cxyz, chord * (1.0 + 1e-9) + 1e-9)
        hits = []
        for i in candidates:
            d = haversine_miles(center, self.points[i])
            if d <= radius:
                hits.append((self.ids[i], d))
        hits.sort(key=lambda pair: (pair[1], pair[0]))
        return hits


def build_index(points) -> SpatialIndex:
    """Build a :class:`SpatialIndex` from (id, GeoPoint) pairs.

    Ids must be unique; a duplicate is rejected by name.
    """
    return SpatialIndex(points)


def within_radius(index: SpatialIndex, center: GeoPoint, radius: float):
    """Functional form of :meth:`SpatialIndex.within_radius`."""
    return index.within_radius(center, radius)
