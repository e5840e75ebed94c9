"""Planning pipeline: warehouse selection over the distance matrix,
demand-proportional resource allocation, K-means truck territories, and
per-cluster closed tours, assembled into a reproducible Plan.

Warehouse selection composes the two exact primitives from
:mod:`optima.graphs`: the minimum spanning tree of the complete distance
graph, then the minimum vertex cover of that tree.  Every node left out
of the cover is adjacent in the tree to at least one warehouse, which is
what makes the per-neighbor demand split in ``allocate_resources`` well
defined.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Sequence

import numpy as np

from .graphs import Tree, minimum_spanning_tree, tree_min_vertex_cover
from .region import DistanceMatrix, RegionGraph, complete_distance_graph
from .tsp import local_search_tour, two_approx_tour

SOLVERS = ("two_approx", "local_search")
MAX_LLOYD_ITERATIONS = 300


class PlanningError(ValueError):
    """A planning operation was called with unusable inputs."""


@dataclass(frozen=True)
class WarehousePlan:
    warehouses: tuple[int, ...]
    mst: Tree
    service_cost_m: float


@dataclass(frozen=True)
class Allocation:
    fractional: tuple[float, ...]
    integral: tuple[int, ...]


@dataclass(frozen=True)
class ClusterAssignment:
    k: int
    assignment: dict[int, int]
    centroids: tuple[tuple[float, float], ...]
    iterations: int
    inertia: float
    inertia_history: tuple[float, ...] = ()


@dataclass(frozen=True)
class TruckRoute:
    truck: int
    warehouses: tuple[int, ...]
    tour: tuple[int, ...]
    tour_cost_m: float


@dataclass(frozen=True)
class PlanParams:
    k_trucks: int
    seed: int
    solver: str
    time_budget_s: float = 10.0


@dataclass(frozen=True)
class Plan:
    region: RegionGraph
    warehouse_plan: WarehousePlan
    allocation: Allocation
    clusters: ClusterAssignment
    tours: tuple[TruckRoute, ...]
    params: PlanParams
    created_at: str


def service_cost(w: Sequence[int], d: DistanceMatrix | np.ndarray) -> float:
    """Total distance from every non-warehouse node to its nearest warehouse."""
    arr = np.asarray(getattr(d, "d", d), dtype=float)
    n = arr.shape[0]
    wset = sorted(set(w))
    outside = [i for i in range(n) if i not in set(wset)]
    if not outside:
        return 0.0
    if not wset:
        raise PlanningError("warehouse set is empty but non-warehouse nodes exist")
    return float(arr[np.ix_(outside, wset)].min(axis=1).sum())


def select_warehouses(d: DistanceMatrix | np.ndarray) -> WarehousePlan:
    """MST of the complete distance graph, then its minimum vertex cover."""
    mst = minimum_spanning_tree(d)
    warehouses = tree_min_vertex_cover(mst)
    if mst.n == 1:
        # a lone settlement serves itself: empty cover, nothing to reach
        return WarehousePlan(warehouses=(), mst=mst, service_cost_m=0.0)
    return WarehousePlan(
        warehouses=warehouses,
        mst=mst,
        service_cost_m=service_cost(warehouses, d),
    )


def allocate_resources(
    t: Tree, w: Sequence[int], populations: Sequence[int]
) -> Allocation:
    """Split every non-warehouse node's demand equally over its warehouse
    neighbors in the tree; warehouses keep their own demand on top.

    Returns both the fractional allocation and a largest-remainder integral
    rounding that sums to the total population exactly (remainder ties go
    to the lower node id).
    """
    if len(populations) != t.n:
        raise PlanningError(f"expected {t.n} population entries, got {len(populations)}")
    wset = set(w)
    for j in wset:
        if not 0 <= j < t.n:
            raise PlanningError(f"warehouse id {j} out of range")
    fractional = [0.0] * t.n
    for j in wset:
        fractional[j] = float(populations[j])
    for i in range(t.n):
        if i in wset:
            continue
        covered = [j for j in t.adjacency[i] if j in wset]
        if not covered:
            raise PlanningError(
                f"node {i} is not adjacent to any warehouse in the tree; "
                "warehouse set must cover it"
            )
        share = populations[i] / len(covered)
        for j in covered:
            fractional[j] += share

    total = int(sum(populations))
    base = {j: math.floor(fractional[j]) for j in wset}
    deficit = total - sum(base.values())
    by_remainder = sorted(wset, key=lambda j: (-(fractional[j] - base[j]), j))
    for j in by_remainder[:deficit]:
        base[j] += 1
    integral = [base.get(i, 0) for i in range(t.n)]
    return Allocation(fractional=tuple(fractional), integral=tuple(integral))


def _squared_dist(p: tuple[float, float], q: tuple[float, float]) -> float:
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2


def _seed_centroids(
    pts: list[tuple[float, float]], k: int, rng: random.Random
) -> list[tuple[float, float]]:
    """Greedy distance-weighted seeding: first centroid drawn uniformly,
    each next one with probability proportional to squared distance from
    the nearest centroid chosen so far."""
    chosen = [rng.randrange(len(pts))]
    d2 = [_squared_dist(p, pts[chosen[0]]) for p in pts]
    while len(chosen) < k:
        total = sum(d2)
        if total <= 0.0:
            # every point coincides with a centroid; take the first
            # index not already chosen
            used = set(chosen)
            nxt = next(i for i in range(len(pts)) if i not in used)
        else:
            r = rng.random() * total
            acc = 0.0
            nxt = len(pts) - 1
            for i, weight in enumerate(d2):
                acc += weight
                if acc >= r:
                    nxt = i
                    break
        chosen.append(nxt)
        d2 = [min(a, _squared_dist(p, pts[nxt])) for a, p in zip(d2, pts)]
    return [pts[i] for i in chosen]


def _assign_points(
    pts: list[tuple[float, float]], centroids: list[tuple[float, float]]
) -> list[int]:
    assign = []
    for p in pts:
        best_k, best_d = 0, _squared_dist(p, centroids[0])
        for ci in range(1, len(centroids)):
            dd = _squared_dist(p, centroids[ci])
            if dd < best_d:
                best_k, best_d = ci, dd
        assign.append(best_k)
    return assign


def _repair_empty_clusters(
    pts: list[tuple[float, float]],
    centroids: list[tuple[float, float]],
    assign: list[int],
    k: int,
) -> None:
    """Give every empty cluster the point currently farthest from its
    centroid (donor clusters must keep >=2 members; ties to lower index)."""
    counts = [0] * k
    for c in assign:
        counts[c] += 1
    for empty in range(k):
        if counts[empty] > 0:
            continue
        far_i, far_d = -1, -1.0
        for i, p in enumerate(pts):
            if counts[assign[i]] < 2:
                continue
            dd = _squared_dist(p, centroids[assign[i]])
            if dd > far_d:
                far_i, far_d = i, dd
        counts[assign[far_i]] -= 1
        assign[far_i] = empty
        counts[empty] = 1


def cluster_assignments(
    points: Sequence[tuple[float, float]],
    k: int,
    seed: int,
    ids: Sequence[int] | None = None,
) -> ClusterAssignment:
    """Seeded deterministic K-means over raw (lat, lon) coordinates.

    Lloyd iterations run to an assignment fixed point (at most 300), with
    empty clusters repaired by reassigning the farthest point.  ``ids``
    names the points in the returned assignment map (defaults to 0..n-1).
    """
    pts = [(float(a), float(b)) for a, b in points]
    m = len(pts)
    if k < 1:
        raise PlanningError(f"cluster count must be >= 1, got {k}")
    if k > m:
        raise PlanningError(f"cluster count {k} exceeds point count {m}")
    keys = list(ids) if ids is not None else list(range(m))
    if len(keys) != m:
        raise PlanningError("ids must match points one to one")

    rng = random.Random(seed)
    centroids = _seed_centroids(pts, k, rng)
    assign: list[int] | None = None
    history: list[float] = []
    iterations = 0
    for _ in range(MAX_LLOYD_ITERATIONS):
        new_assign = _assign_points(pts, centroids)
        _repair_empty_clusters(pts, centroids, new_assign, k)
        centroids = []
        for ci in range(k):
            members = [pts[i] for i in range(m) if new_assign[i] == ci]
            centroids.append(
                (
                    sum(p[0] for p in members) / len(members),
                    sum(p[1] for p in members) / len(members),
                )
            )
        iterations += 1
        history.append(
            sum(_squared_dist(pts[i], centroids[new_assign[i]]) for i in range(m))
        )
        if new_assign == assign:
            break
        assign = new_assign

    return ClusterAssignment(
        k=k,
        assignment={keys[i]: assign[i] for i in range(m)},
        centroids=tuple(centroids),
        iterations=iterations,
        inertia=history[-1],
        inertia_history=tuple(history),
    )


def build_plan(
    region: RegionGraph,
    k_trucks: int,
    seed: int = 0,
    solver: str = "local_search",
    time_budget_s: float = 10.0,
) -> Plan:
    """Run the whole pipeline on a region and assemble the Plan."""
    if solver not in SOLVERS:
        raise PlanningError(f"unknown solver {solver!r}; choose from {SOLVERS}")
    if k_trucks < 1:
        raise PlanningError(f"truck count must be >= 1, got {k_trucks}")

    dm = complete_distance_graph(region)
    wp = select_warehouses(dm)
    if k_trucks > len(wp.warehouses):
        raise PlanningError(
            f"truck count {k_trucks} exceeds the {len(wp.warehouses)} selected warehouses"
        )
    alloc = allocate_resources(wp.mst, wp.warehouses, region.populations())

    wh_points = [
        (region.settlements[j].lat, region.settlements[j].lon) for j in wp.warehouses
    ]
    clusters = cluster_assignments(wh_points, k_trucks, seed, ids=wp.warehouses)

    routes = []
    for truck in range(k_trucks):
        members = sorted(j for j, c in clusters.assignment.items() if c == truck)
        sub = dm.d[np.ix_(members, members)]
        if solver == "two_approx":
            tour = two_approx_tour(sub, start=0)
        else:
            tour = local_search_tour(sub, start=0, time_budget_s=time_budget_s, seed=seed)
        routes.append(
            TruckRoute(
                truck=truck,
                warehouses=tuple(members),
                tour=tuple(members[i] for i in tour.order),
                tour_cost_m=float(tour.cost),
            )
        )

    return Plan(
        region=region,
        warehouse_plan=wp,
        allocation=alloc,
        clusters=clusters,
        tours=tuple(routes),
        params=PlanParams(
            k_trucks=k_trucks, seed=seed, solver=solver, time_budget_s=time_budget_s
        ),
        created_at=datetime.now(timezone.utc).isoformat(),
    )


def plan_document(plan: Plan) -> dict:
    """The wire/file form of a Plan.  Deliberately excludes the creation
    timestamp so identical inputs produce byte-identical documents."""
    return {
        "params": {
            "k_trucks": plan.params.k_trucks,
            "seed": plan.params.seed,
            "solver": plan.params.solver,
            "time_budget_s": plan.params.time_budget_s,
        },
        "warehouses": list(plan.warehouse_plan.warehouses),
        "mst_edges": [[u, v, w] for u, v, w in plan.warehouse_plan.mst.edges],
        "service_cost_m": plan.warehouse_plan.service_cost_m,
        "allocation": {
            "fractional": {str(i): x for i, x in enumerate(plan.allocation.fractional)},
            "integral": {str(i): x for i, x in enumerate(plan.allocation.integral)},
        },
        "clusters": [
            {
                "truck": r.truck,
                "warehouses": list(r.warehouses),
                "tour": list(r.tour),
                "tour_cost_m": r.tour_cost_m,
            }
            for r in plan.tours
        ],
        "seed": plan.params.seed,
    }


def plan_to_json(plan: Plan) -> str:
    return json.dumps(plan_document(plan), indent=2) + "\n"
