"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run visibly with:  pytest tests/test_acceptance.py -v -s

Known expected failure: the fri26 3%-gap clause.  The shipped fri26 file is
a reconstruction whose true optimum is 1088, not the canonical 937 (the
canonical matrix was not recoverable in this environment); the criterion is
asserted as specified and reports the failure honestly.
"""

from __future__ import annotations

import json
import random
import time
from pathlib import Path

import numpy as np
import pytest
from fastapi.testclient import TestClient

from optima.cli import main as cli_main
from optima.graphs import Tree, minimum_spanning_tree, tree_min_vertex_cover
from optima.planner import allocate_resources, cluster_assignments
from optima.region import DistanceMatrix
from optima.service import create_app
from optima.tsp import (
    distance_matrix,
    local_search_tour,
    parse_tsplib,
    tour_cost,
    two_approx_tour,
)

from conftest import (
    DATA_DIR,
    TSPLIB_DIR,
    brute_force_tree_mvc_size,
    brute_force_tsp,
    brute_force_two_partition_inertia,
    random_metric_points_matrix,
    random_tree_edges,
)

KNOWN_OPTIMA = json.loads((TSPLIB_DIR / "known_optima.json").read_text())
ACCEPTANCE_INSTANCES = ("gr17", "fri26", "att48", "kroA100", "kroA200")
GAP_TOLERANCE = {"gr17": 0.03, "fri26": 0.03, "att48": None, "kroA100": 0.05, "kroA200": 0.05}
RUNTIME_LIMIT_S = 30.0


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {'PASS' if ok else 'FAIL'} - {criterion}: {detail}")


def _load_matrix(name: str):
    inst = parse_tsplib((TSPLIB_DIR / f"{name}.tsp").read_bytes())
    return inst, distance_matrix(inst)


class TestTsplibFidelity:
    """Criterion 1: parse the five benchmark instances; local search lands
    within the stated gap of the known optimum within 30 s per instance."""

    @pytest.mark.parametrize("name", ACCEPTANCE_INSTANCES)
    def test_parses(self, name):
        inst, matrix = _load_matrix(name)
        expected_n = {"gr17": 17, "fri26": 26, "att48": 48, "kroA100": 100, "kroA200": 200}
        ok = inst.n == expected_n[name] and matrix.shape == (inst.n, inst.n)
        _report(f"tsplib-fidelity/parse {name}", ok, f"n={inst.n} kind={inst.weight_kind}")
        assert ok

    @pytest.mark.parametrize("name", ACCEPTANCE_INSTANCES)
    def test_local_search_gap_and_runtime(self, name):
        tolerance = GAP_TOLERANCE[name]
        optimum = KNOWN_OPTIMA[name]
        _, matrix = _load_matrix(name)
        started = time.perf_counter()
        tour = local_search_tour(matrix, 0, time_budget_s=10.0, seed=0)
        elapsed = time.perf_counter() - started
        gap = 100.0 * (tour.cost - optimum) / optimum
        within_time = elapsed <= RUNTIME_LIMIT_S
        if tolerance is None:  # att48: parse-only instance in this criterion
            _report(
                f"tsplib-fidelity/solve {name}", within_time,
                f"cost={tour.cost} gap={gap:+.2f}% time={elapsed:.2f}s (no gap target)",
            )
            assert within_time
            return
        ok = within_time and tour.cost <= optimum * (1.0 + tolerance)
        _report(
            f"tsplib-fidelity/solve {name}", ok,
            f"cost={tour.cost} optimum={optimum} gap={gap:+.2f}% "
            f"(limit {tolerance * 100:.0f}%) time={elapsed:.2f}s",
        )
        assert ok, (
            f"{name}: cost {tour.cost} exceeds {optimum} +{tolerance * 100:.0f}% "
            f"or took {elapsed:.1f}s > {RUNTIME_LIMIT_S}s"
            + (
                "; shipped fri26 is a reconstruction with true optimum 1088, "
                "the canonical matrix was not recoverable"
                if name == "fri26"
                else ""
            )
        )


class TestTwoApproxBound:
    """Criterion 2: spanning-tree solver within twice the exact optimum on
    200 random metric instances (n <= 9), and <= 4170 on gr17."""

    def test_random_metric_instances(self):
        rng = random.Random(20240)
        failures = 0
        for _ in range(200):
            n = rng.randrange(3, 10)
            d = random_metric_points_matrix(rng, n)
            tour = two_approx_tour(d, rng.randrange(n))
            if tour.cost > 2.0 * brute_force_tsp(d) + 1e-9:
                failures += 1
        _report("two-approx-bound/random", failures == 0, f"{200 - failures}/200 within 2x optimum")
        assert failures == 0

    def test_gr17_bound(self):
        _, matrix = _load_matrix("gr17")
        tour = two_approx_tour(matrix, 0)
        ok = tour.cost <= 4170
        _report("two-approx-bound/gr17", ok, f"cost={tour.cost} <= 4170")
        assert ok


class TestNonNegativeGap:
    """Criterion 3: under bit-exact distances no solver reports a cost
    below the instance's known optimum."""

    @pytest.mark.parametrize("name", ACCEPTANCE_INSTANCES)
    def test_no_solver_beats_optimum(self, name):
        optimum = KNOWN_OPTIMA[name]
        _, matrix = _load_matrix(name)
        costs = {
            "two_approx": two_approx_tour(matrix, 0).cost,
            "local_search": local_search_tour(matrix, 0, time_budget_s=10.0, seed=0).cost,
        }
        ok = all(cost >= optimum for cost in costs.values())
        _report(f"non-negative-gap/{name}", ok, f"costs={costs} optimum={optimum}")
        assert ok


class TestWarehouseSelectionOracle:
    """Criterion 4: on 100 random instances (n <= 12) the selection is a
    vertex cover of the MST and matches the exhaustive tree-MVC minimum."""

    def test_cover_and_cardinality(self):
        rng = random.Random(777)
        cover_ok = 0
        size_ok = 0
        trials = 100
        for _ in range(trials):
            n = rng.randrange(2, 13)
            d = random_metric_points_matrix(rng, n)
            mst = minimum_spanning_tree(d)
            cover = tree_min_vertex_cover(mst)
            cover_set = set(cover)
            if all(u in cover_set or v in cover_set for u, v, _ in mst.edges):
                cover_ok += 1
            if len(cover) == brute_force_tree_mvc_size(n, mst.edges):
                size_ok += 1
        _report(
            "warehouse-selection-oracle", cover_ok == trials and size_ok == trials,
            f"cover {cover_ok}/{trials}, minimum cardinality {size_ok}/{trials}",
        )
        assert cover_ok == trials
        assert size_ok == trials


class TestAllocationConservation:
    """Criterion 5: fractional allocation conserves total demand to 1e-6
    relative, integral conserves exactly, non-warehouse allocation is 0."""

    def test_conservation(self):
        rng = random.Random(4242)
        trials = 100
        fractional_ok = integral_ok = support_ok = 0
        for _ in range(trials):
            n = rng.randrange(2, 14)
            tree = Tree(n=n, edges=random_tree_edges(rng, n))
            warehouses = tree_min_vertex_cover(tree)
            pops = [rng.randrange(0, 100_000) for _ in range(n)]
            alloc = allocate_resources(tree, warehouses, pops)
            total = sum(pops)
            if total == 0 or abs(sum(alloc.fractional) - total) <= 1e-6 * total:
                fractional_ok += 1
            if sum(alloc.integral) == total:
                integral_ok += 1
            wset = set(warehouses)
            if all(alloc.fractional[i] == 0.0 and alloc.integral[i] == 0
                   for i in range(n) if i not in wset):
                support_ok += 1
        ok = fractional_ok == integral_ok == support_ok == trials
        _report(
            "allocation-conservation", ok,
            f"fractional {fractional_ok}/{trials}, integral {integral_ok}/{trials}, "
            f"support {support_ok}/{trials}",
        )
        assert ok


class TestKMeansProperties:
    """Criterion 6: inertia never increases across iterations; k = n gives
    inertia 0; two separated blobs are recovered for all of 20 seeds."""

    def test_monotone_inertia(self):
        rng = random.Random(31337)
        monotone = True
        for seed in range(25):
            pts = [(rng.uniform(0, 20), rng.uniform(0, 20)) for _ in range(rng.randrange(5, 40))]
            k = rng.randrange(1, min(8, len(pts)) + 1)
            ca = cluster_assignments(pts, k=k, seed=seed)
            history = ca.inertia_history
            if any(later > earlier + 1e-9 for earlier, later in zip(history, history[1:])):
                monotone = False
        _report("kmeans/monotone-inertia", monotone, "25 runs, per-iteration check")
        assert monotone

    def test_k_equals_points_zero_inertia(self):
        rng = random.Random(99)
        pts = [(rng.uniform(0, 5), rng.uniform(0, 5)) for _ in range(9)]
        ca = cluster_assignments(pts, k=9, seed=3)
        _report("kmeans/k-equals-n", ca.inertia == 0.0, f"inertia={ca.inertia}")
        assert ca.inertia == 0.0

    def test_two_blob_separation_all_seeds(self):
        rng = random.Random(5150)
        blob_a = [(rng.uniform(0, 1), rng.uniform(0, 1)) for _ in range(5)]
        blob_b = [(rng.uniform(40, 41), rng.uniform(40, 41)) for _ in range(5)]
        pts = blob_a + blob_b
        oracle = brute_force_two_partition_inertia(pts)
        recovered = 0
        for seed in range(20):
            ca = cluster_assignments(pts, k=2, seed=seed)
            first = {ca.assignment[i] for i in range(5)}
            second = {ca.assignment[i] for i in range(5, 10)}
            if len(first) == 1 and len(second) == 1 and first != second:
                if abs(ca.inertia - oracle) <= 1e-9 * max(1.0, oracle):
                    recovered += 1
        _report("kmeans/two-blob-separation", recovered == 20, f"{recovered}/20 seeds")
        assert recovered == 20


class TestEndToEndDeterminism:
    """Criterion 7: the plan command on the shipped fixture with a fixed
    seed produces byte-identical plan files across runs.  (Cross-machine
    identity follows from the same construction: pure-Python/NumPy
    arithmetic with fixed iteration counts and no wall-clock dependence at
    this scale.)"""

    def test_byte_identical_plan_files(self, tmp_path, capsys):
        region = DATA_DIR / "sample_region.json"
        outputs = []
        for run in range(2):
            out = tmp_path / f"plan-{run}.json"
            code = cli_main(
                ["plan", str(region), "--trucks", "2", "--seed", "7", "--out", str(out)]
            )
            capsys.readouterr()
            assert code == 0
            outputs.append(out.read_bytes())
        ok = outputs[0] == outputs[1]
        _report("end-to-end-determinism", ok, f"{len(outputs[0])} bytes, two runs identical={ok}")
        assert ok


class TestServiceLifecycle:
    """Criterion 8: create region -> create plan -> patch truck count;
    old plan superseded, new ready; documents survive a process restart."""

    def test_lifecycle_and_restart(self, tmp_path, sample_region_doc):
        store = tmp_path / "acceptance-store"
        client = TestClient(create_app(store))
        region_id = client.post("/regions", json=sample_region_doc).json()["region_id"]
        created = client.post(
            f"/regions/{region_id}/plans",
            json={"k_trucks": 2, "seed": 7, "solver": "local_search"},
        ).json()
        patched = client.patch(f"/plans/{created['plan_id']}", json={"k_trucks": 3}).json()
        old_status = client.get(f"/plans/{created['plan_id']}").json()["status"]
        new_status = client.get(f"/plans/{patched['plan_id']}").json()["status"]

        restarted = TestClient(create_app(store))
        same_old = restarted.get(f"/plans/{created['plan_id']}").json() == client.get(
            f"/plans/{created['plan_id']}"
        ).json()
        same_new = restarted.get(f"/plans/{patched['plan_id']}").json() == client.get(
            f"/plans/{patched['plan_id']}"
        ).json()
        ok = (
            old_status == "superseded"
            and new_status == "ready"
            and len(patched["plan"]["clusters"]) == 3
            and same_old
            and same_new
        )
        _report(
            "service-lifecycle", ok,
            f"old={old_status} new={new_status} restart identical={same_old and same_new}",
        )
        assert ok
