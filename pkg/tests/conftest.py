"""Shared fixtures and independent brute-force oracles.

The oracles here deliberately avoid the library's own code paths: MST via
exhaustive Prufer-sequence enumeration, vertex cover via subset
enumeration, TSP via permutation enumeration, shortest paths via
Bellman-Ford relaxation.  Tests freeze library outputs against these.
"""

from __future__ import annotations

import itertools
import json
import random
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

REPO_ROOT = Path(__file__).resolve().parents[1]
DATA_DIR = REPO_ROOT / "data"
TSPLIB_DIR = DATA_DIR / "tsplib"


@pytest.fixture(scope="session")
def sample_region_path() -> Path:
    return DATA_DIR / "sample_region.json"


@pytest.fixture(scope="session")
def sample_region_doc(sample_region_path) -> dict:
    return json.loads(sample_region_path.read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def sample_region(sample_region_path):
    from optima.region import load_region

    with open(sample_region_path, "rb") as f:
        return load_region(f)


# -- exhaustive oracles ----------------------------------------------------


@lru_cache(maxsize=4)
def _all_prufer_trees(n: int) -> np.ndarray:
    """Edge lists of every labeled tree on n nodes, via vectorized decode
    of all n**(n-2) Prufer sequences.  Shape (n**(n-2), n-1, 2)."""
    if n == 2:
        return np.array([[[0, 1]]], dtype=np.int64)
    seq_len = n - 2
    count = n**seq_len
    seqs = np.empty((count, seq_len), dtype=np.int64)
    base = np.arange(count)
    for t in range(seq_len):
        seqs[:, t] = (base // (n ** (seq_len - 1 - t))) % n

    degree = np.ones((count, n), dtype=np.int64)
    for t in range(seq_len):
        np.add.at(degree, (np.arange(count), seqs[:, t]), 1)

    edges = np.empty((count, n - 1, 2), dtype=np.int64)
    ids = np.arange(n)[None, :]
    rows = np.arange(count)
    for t in range(seq_len):
        leaf = np.where(degree == 1, ids, n).min(axis=1)
        edges[:, t, 0] = leaf
        edges[:, t, 1] = seqs[:, t]
        degree[rows, leaf] -= 1
        degree[rows, seqs[:, t]] -= 1
    first = (degree == 1).argmax(axis=1)
    degree[rows, first] = 0
    second = (degree == 1).argmax(axis=1)
    edges[:, n - 2, 0] = first
    edges[:, n - 2, 1] = second
    return edges


def brute_force_mst_weight(d: np.ndarray) -> float:
    """Minimum spanning tree weight by enumerating every labeled tree."""
    n = d.shape[0]
    trees = _all_prufer_trees(n)
    weights = d[trees[:, :, 0], trees[:, :, 1]].sum(axis=1)
    return float(weights.min())


def brute_force_tree_mvc_size(n: int, edge_list) -> int:
    """Minimum vertex cover cardinality by subset enumeration (n <= 20)."""
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(masks.size, dtype=bool)
    for u, v, *_ in edge_list:
        ok &= (((masks >> u) | (masks >> v)) & 1).astype(bool)
    sizes = np.zeros(masks.size, dtype=np.int64)
    for b in range(n):
        sizes += (masks >> b) & 1
    return int(sizes[ok].min())


@lru_cache(maxsize=8)
def _closed_tour_perms(n: int) -> np.ndarray:
    perms = np.array(
        [(0,) + p for p in itertools.permutations(range(1, n))], dtype=np.int64
    )
    return perms


def brute_force_tsp(d: np.ndarray) -> float:
    """Exact optimal closed-tour cost by permutation enumeration (n <= 9)."""
    n = d.shape[0]
    if n == 1:
        return 0.0
    perms = _closed_tour_perms(n)
    costs = d[perms[:, :-1], perms[:, 1:]].sum(axis=1) + d[perms[:, -1], perms[:, 0]]
    return float(costs.min())


def bellman_ford_all_pairs(n: int, road_list) -> np.ndarray:
    """All-pairs shortest paths by repeated edge relaxation."""
    inf = float("inf")
    dist = np.full((n, n), inf)
    np.fill_diagonal(dist, 0.0)
    for _ in range(n - 1):
        changed = False
        for u, v, w in road_list:
            for s in range(n):
                if dist[s, u] + w < dist[s, v]:
                    dist[s, v] = dist[s, u] + w
                    changed = True
                if dist[s, v] + w < dist[s, u]:
                    dist[s, u] = dist[s, v] + w
                    changed = True
        if not changed:
            break
    return dist


def brute_force_two_partition_inertia(points) -> float:
    """Minimum 2-cluster inertia over every bipartition (len <= 12)."""
    pts = np.asarray(points, dtype=float)
    m = len(pts)
    best = float("inf")
    for mask in range(1, (1 << (m - 1))):
        side = np.array([(mask >> i) & 1 for i in range(m)], dtype=bool)
        if side.all() or not side.any():
            continue
        inertia = 0.0
        for group in (pts[side], pts[~side]):
            c = group.mean(axis=0)
            inertia += ((group - c) ** 2).sum()
        best = min(best, inertia)
    return best


def random_metric_points_matrix(rng: random.Random, n: int, scale=100.0) -> np.ndarray:
    pts = np.array([[rng.random() * scale, rng.random() * scale] for _ in range(n)])
    d = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    np.fill_diagonal(d, 0.0)
    return d


def random_tree_edges(rng: random.Random, n: int, max_w=50.0):
    """Random tree: each node i >= 1 attaches to a random earlier node."""
    return tuple(
        (rng.randrange(i), i, round(rng.random() * max_w, 3)) for i in range(1, n)
    )
