"""Relief-distribution planning engine.

Pipeline: region model -> complete shortest-road-distance matrix ->
warehouse selection (MST + tree vertex cover) -> demand-proportional
allocation -> K-means truck territories -> per-cluster closed tours.
"""

__version__ = "0.1.0"

from .region import (
    DisconnectedRegionError,
    DistanceMatrix,
    RegionError,
    RegionGraph,
    RoadEdge,
    Settlement,
    complete_distance_graph,
    haversine_m,
    load_region,
)

__all__ = [
    "DisconnectedRegionError",
    "DistanceMatrix",
    "RegionError",
    "RegionGraph",
    "RoadEdge",
    "Settlement",
    "complete_distance_graph",
    "haversine_m",
    "load_region",
    "__version__",
]
