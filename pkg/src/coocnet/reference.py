"""External gold standards for evaluating graph-based similarity.

Category-vector cosine over sparse binary assignments (names) and
great-circle distance between geolocations (cities).
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping

EARTH_RADIUS_KM = 6371.0


def haversine_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    """Great-circle distance in kilometers between two points given in
    decimal degrees."""
    phi1 = math.radians(lat1)
    phi2 = math.radians(lat2)
    dphi = math.radians(lat2 - lat1)
    dlon = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlon / 2.0) ** 2
    # clamp against rounding slightly above 1 for antipodal points
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(a)))


class CategoryMatrix:
    """Sparse binary entity-by-category incidence.

    Entities without any category assignment are excluded on construction,
    so every retained row is non-zero.
    """

    def __init__(self, assignments: Mapping[str, Iterable[str]]):
        self._categories: dict[str, frozenset[str]] = {}
        self._by_category: dict[str, set[str]] = {}
        for entity, cats in assignments.items():
            cat_set = frozenset(cats)
            if not cat_set:
                continue
            self._categories[entity] = cat_set
            for cat in cat_set:
                self._by_category.setdefault(cat, set()).add(entity)

    def __contains__(self, entity: object) -> bool:
        return entity in self._categories

    def __len__(self) -> int:
        return len(self._categories)

    def entities(self) -> list[str]:
        return sorted(self._categories)

    def category_count(self) -> int:
        return len(self._by_category)

    def categories(self, entity: str) -> frozenset[str]:
        try:
            return self._categories[entity]
        except KeyError:
            raise KeyError(f"no category assignment for {entity!r}") from None

    def cosine(self, u: str, v: str) -> float:
        """Cosine similarity of the two binary category vectors."""
        cu = self.categories(u)
        cv = self.categories(v)
        inter = len(cu & cv)
        if inter == 0:
            return 0.0
        return inter / (math.sqrt(len(cu)) * math.sqrt(len(cv)))

    def partner_count(self, u: str) -> int:
        """Number of other entities sharing at least one category with u,
        i.e. with a non-zero cosine. Uses the inverted category index."""
        partners: set[str] = set()
        for cat in self.categories(u):
            partners |= self._by_category[cat]
        partners.discard(u)
        return len(partners)


def category_cosine(matrix: CategoryMatrix, u: str, v: str) -> float:
    return matrix.cosine(u, v)


def nonzero_partner_count(matrix: CategoryMatrix, u: str) -> int:
    return matrix.partner_count(u)


def load_categories(path) -> CategoryMatrix:
    """Load a TSV with one ``entity<TAB>category`` assignment per line."""
    assignments: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise ValueError(f"{path}:{lineno}: expected entity<TAB>category")
            assignments.setdefault(parts[0], set()).add(parts[1])
    if not assignments:
        raise ValueError(f"{path}: no category assignments")
    return CategoryMatrix(assignments)


class GeoTable:
    """Entity locations in decimal degrees, one location per entity."""

    def __init__(self, locations: Mapping[str, tuple[float, float]]):
        self._locations: dict[str, tuple[float, float]] = {}
        for entity, (lat, lon) in locations.items():
            if not -90.0 <= lat <= 90.0:
                raise ValueError(f"latitude out of range for {entity!r}: {lat}")
            if not -180.0 < lon <= 180.0:
                raise ValueError(f"longitude out of range for {entity!r}: {lon}")
            self._locations[entity] = (lat, lon)

    def __contains__(self, entity: object) -> bool:
        return entity in self._locations

    def __len__(self) -> int:
        return len(self._locations)

    def entities(self) -> list[str]:
        return sorted(self._locations)

    def location(self, entity: str) -> tuple[float, float]:
        try:
            return self._locations[entity]
        except KeyError:
            raise KeyError(f"no location for {entity!r}") from None

    def distance(self, u: str, v: str) -> float:
        """Great-circle distance between the two entities, in kilometers."""
        lat1, lon1 = self.location(u)
        lat2, lon2 = self.location(v)
        return haversine_km(lat1, lon1, lat2, lon2)


def geo_distance(table: GeoTable, u: str, v: str) -> float:
    return table.distance(u, v)


def load_geo_table(path) -> GeoTable:
    """Load a TSV with ``entity<TAB>lat<TAB>lon`` rows (decimal degrees)."""
    locations: dict[str, tuple[float, float]] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.rstrip("\n")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3 or not parts[0]:
                raise ValueError(f"{path}:{lineno}: expected entity<TAB>lat<TAB>lon")
            entity = parts[0]
            if entity in locations:
                raise ValueError(f"{path}:{lineno}: duplicate location for {entity!r}")
            try:
                lat = float(parts[1])
                lon = float(parts[2])
            except ValueError:
                raise ValueError(f"{path}:{lineno}: bad coordinates {parts[1]!r}, {parts[2]!r}") from None
            if not -90.0 <= lat <= 90.0:
                raise ValueError(f"{path}:{lineno}: latitude out of range: {lat}")
            if not -180.0 < lon <= 180.0:
                raise ValueError(f"{path}:{lineno}: longitude out of range: {lon}")
            locations[entity] = (lat, lon)
    if not locations:
        raise ValueError(f"{path}: no locations")
    return GeoTable(locations)
