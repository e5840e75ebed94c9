"""Region data model: settlements, road network, and the complete
shortest-road-distance matrix that every planning stage consumes.

A region is loaded from a JSON document (see ``load_region``).  When the
document carries a road network, pairwise distances are shortest paths over
that network; without roads the great-circle distance between settlement
coordinates is used so that coordinate-only data stays plannable.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

EARTH_RADIUS_M = 6_371_000.0


class RegionError(ValueError):
    """A region document or graph violates the data model."""


class DisconnectedRegionError(RegionError):
    """The road graph leaves at least one settlement pair unreachable."""

    def __init__(self, u: int, v: int):
        self.unreachable_pair = (u, v)
        super().__init__(
            f"road graph is disconnected: no path between settlements {u} and {v}"
        )


@dataclass(frozen=True)
class Settlement:
    id: int
    name: str
    lat: float
    lon: float
    population: int

    def __post_init__(self) -> None:
        if self.id < 0:
            raise RegionError(f"settlement id must be >= 0, got {self.id}")
        if not -90.0 <= self.lat <= 90.0:
            raise RegionError(f"settlement {self.id}: lat {self.lat} outside [-90, 90]")
        if not -180.0 <= self.lon <= 180.0:
            raise RegionError(f"settlement {self.id}: lon {self.lon} outside [-180, 180]")
        if self.population < 0:
            raise RegionError(f"settlement {self.id}: population must be >= 0")


@dataclass(frozen=True)
class RoadEdge:
    u: int
    v: int
    length_m: float

    def __post_init__(self) -> None:
        if self.u == self.v:
            raise RegionError(f"road {self.u}-{self.v}: endpoints must differ")
        if not self.length_m > 0:
            raise RegionError(f"road {self.u}-{self.v}: length must be > 0 m")


@dataclass(frozen=True)
class RegionGraph:
    settlements: tuple[Settlement, ...]
    roads: tuple[RoadEdge, ...] = ()

    def __post_init__(self) -> None:
        if len(self.settlements) < 1:
            raise RegionError("region must have >=1 settlement")
        for idx, s in enumerate(self.settlements):
            if s.id != idx:
                seen = [t.id for t in self.settlements]
                if len(set(seen)) != len(seen):
                    dup = next(i for i in seen if seen.count(i) > 1)
                    raise RegionError(f"duplicate settlement id {dup}")
                raise RegionError(
                    f"settlement ids must be dense 0-based in file order; "
                    f"position {idx} has id {s.id}"
                )
        n = len(self.settlements)
        for r in self.roads:
            for end in (r.u, r.v):
                if not 0 <= end < n:
                    raise RegionError(
                        f"road {r.u}-{r.v} references unknown settlement id {end}"
                    )

    @property
    def n(self) -> int:
        return len(self.settlements)

    def populations(self) -> tuple[int, ...]:
        return tuple(s.population for s in self.settlements)


@dataclass(frozen=True)
class DistanceMatrix:
    """Complete symmetric matrix of pairwise distances in meters."""

    n: int
    d: np.ndarray
    connected: bool = True

    def __post_init__(self) -> None:
        arr = np.asarray(self.d, dtype=float)
        if arr.shape != (self.n, self.n):
            raise RegionError(f"distance matrix must be {self.n}x{self.n}")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "d", arr)
        if np.any(np.diagonal(arr) != 0.0):
            raise RegionError("distance matrix diagonal must be zero")
        if not np.array_equal(arr, arr.T):
            raise RegionError("distance matrix must be symmetric")
        if np.any(arr < 0.0):
            raise RegionError("distances must be non-negative")


def haversine_m(a: tuple[float, float], b: tuple[float, float]) -> float:
    """Great-circle distance in meters between two (lat, lon) points."""
    lat1, lon1 = math.radians(a[0]), math.radians(a[1])
    lat2, lon2 = math.radians(b[0]), math.radians(b[1])
    s = (
        math.sin((lat2 - lat1) / 2.0) ** 2
        + math.cos(lat1) * math.cos(lat2) * math.sin((lon2 - lon1) / 2.0) ** 2
    )
    return 2.0 * EARTH_RADIUS_M * math.asin(min(1.0, math.sqrt(s)))


_SETTLEMENT_FIELDS = {"id", "name", "lat", "lon", "population"}
_ROAD_FIELDS = {"u", "v", "length_m"}
_TOP_FIELDS = {"settlements", "roads"}


def _require_keys(obj: dict, allowed: set[str], required: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise RegionError(f"{where}: unknown field(s) {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise RegionError(f"{where}: missing field(s) {sorted(missing)}")


def _as_int(value: Any, where: str) -> int:
    # bool is an int subclass; reject it explicitly
    if isinstance(value, bool) or not isinstance(value, int):
        raise RegionError(f"{where}: expected integer, got {value!r}")
    return value


def _as_number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RegionError(f"{where}: expected number, got {value!r}")
    return float(value)


def region_from_document(doc: Any) -> RegionGraph:
    """Build a validated RegionGraph from a parsed region document."""
    if not isinstance(doc, dict):
        raise RegionError("region document must be a JSON object")
    _require_keys(doc, _TOP_FIELDS, {"settlements"}, "region document")
    raw_settlements = doc["settlements"]
    if not isinstance(raw_settlements, list) or not raw_settlements:
        raise RegionError("region must have >=1 settlement")

    settlements = []
    for idx, item in enumerate(raw_settlements):
        where = f"settlements[{idx}]"
        if not isinstance(item, dict):
            raise RegionError(f"{where}: expected object")
        _require_keys(item, _SETTLEMENT_FIELDS, _SETTLEMENT_FIELDS, where)
        if not isinstance(item["name"], str):
            raise RegionError(f"{where}.name: expected string")
        settlements.append(
            Settlement(
                id=_as_int(item["id"], f"{where}.id"),
                name=item["name"],
                lat=_as_number(item["lat"], f"{where}.lat"),
                lon=_as_number(item["lon"], f"{where}.lon"),
                population=_as_int(item["population"], f"{where}.population"),
            )
        )

    roads = []
    for idx, item in enumerate(doc.get("roads") or []):
        where = f"roads[{idx}]"
        if not isinstance(item, dict):
            raise RegionError(f"{where}: expected object")
        _require_keys(item, _ROAD_FIELDS, _ROAD_FIELDS, where)
        roads.append(
            RoadEdge(
                u=_as_int(item["u"], f"{where}.u"),
                v=_as_int(item["v"], f"{where}.v"),
                length_m=_as_number(item["length_m"], f"{where}.length_m"),
            )
        )

    return RegionGraph(settlements=tuple(settlements), roads=tuple(roads))


def region_to_document(region: RegionGraph) -> dict:
    """Inverse of :func:`region_from_document`."""
    return {
        "settlements": [
            {"id": s.id, "name": s.name, "lat": s.lat, "lon": s.lon, "population": s.population}
            for s in region.settlements
        ],
        "roads": [{"u": r.u, "v": r.v, "length_m": r.length_m} for r in region.roads],
    }


def load_region(source: Any) -> RegionGraph:
    """Load a region from a byte/text stream, bytes, or JSON text."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = source
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise RegionError(f"region file is not valid JSON: {exc}") from exc
    return region_from_document(doc)


def _shortest_paths_from(
    src: int, n: int, adjacency: list[list[tuple[int, float]]]
) -> list[float]:
    dist = [math.inf] * n
    dist[src] = 0.0
    heap: list[tuple[float, int]] = [(0.0, src)]
    while heap:
        du, u = heapq.heappop(heap)
        if du > dist[u]:
            continue
        for v, w in adjacency[u]:
            dv = du + w
            if dv < dist[v]:
                dist[v] = dv
                heapq.heappush(heap, (dv, v))
    return dist


def complete_distance_graph(region: RegionGraph) -> DistanceMatrix:
    """Build the complete pairwise distance matrix for a region.

    With roads present, entry (i, j) is the shortest-path length over the
    road graph; a disconnected road graph is an error.  Without roads, the
    great-circle distance between settlement coordinates is used.
    """
    n = region.n
    d = np.zeros((n, n), dtype=float)
    if region.roads:
        adjacency: list[list[tuple[int, float]]] = [[] for _ in range(n)]
        for r in region.roads:
            adjacency[r.u].append((r.v, r.length_m))
            adjacency[r.v].append((r.u, r.length_m))
        for i in range(n):
            row = _shortest_paths_from(i, n, adjacency)
            for j, dist in enumerate(row):
                if math.isinf(dist):
                    raise DisconnectedRegionError(i, j)
                # mirror the upper triangle so the matrix is exactly symmetric
                if j > i:
                    d[i, j] = dist
                    d[j, i] = dist
    else:
        for i in range(n):
            a = (region.settlements[i].lat, region.settlements[i].lon)
            for j in range(i + 1, n):
                b = (region.settlements[j].lat, region.settlements[j].lon)
                dist = haversine_m(a, b)
                d[i, j] = dist
                d[j, i] = dist
    return DistanceMatrix(n=n, d=d, connected=True)
