"""TSP solving and TSPLIB benchmarking."""

from .bench import BenchReport, BenchRow, SOLVER_NAMES, run_benchmark
from .solve import Tour, local_search_tour, percent_gap, tour_cost, two_approx_tour
from .tsplib import (
    TspInstance,
    TsplibError,
    distance_matrix,
    parse_tsplib,
    tsplib_distance,
)

__all__ = [
    "BenchReport",
    "BenchRow",
    "SOLVER_NAMES",
    "Tour",
    "TspInstance",
    "TsplibError",
    "distance_matrix",
    "local_search_tour",
    "parse_tsplib",
    "percent_gap",
    "run_benchmark",
    "tour_cost",
    "tsplib_distance",
    "two_approx_tour",
]
