"""Exact graph primitives shared by the planner and the tour solvers:
minimum spanning tree, minimum vertex cover on trees, preorder traversal.

All tie-breaks are fully specified so downstream plans are reproducible:
MST edges are accepted in ascending ``(weight, min(u, v), max(u, v))``
order, the cover DP prefers "not in cover" on equal subtree cost, and
preorder visits children in ascending node-id order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


class TreeError(ValueError):
    """An edge list does not describe a valid tree."""


@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[tuple[int, int, float], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise TreeError("tree must have >=1 node")
        if len(self.edges) != self.n - 1:
            raise TreeError(f"tree on {self.n} nodes needs {self.n - 1} edges, got {len(self.edges)}")
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise TreeError(f"invalid tree edge ({u}, {v})")
            if w < 0:
                raise TreeError(f"tree edge ({u}, {v}) has negative weight {w}")
        # connectivity: n-1 edges + all nodes reachable from 0 => acyclic too
        seen = {0}
        stack = [0]
        adj = self.adjacency
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) != self.n:
            raise TreeError("edge list does not connect all nodes")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """Per-node neighbor ids, ascending."""
        lists: list[list[int]] = [[] for _ in range(self.n)]
        for u, v, _ in self.edges:
            lists[u].append(v)
            lists[v].append(u)
        return tuple(tuple(sorted(neigh)) for neigh in lists)

    @property
    def total_weight(self) -> float:
        return float(sum(w for _, _, w in self.edges))


def _as_square_matrix(dist) -> np.ndarray:
    arr = np.asarray(getattr(dist, "d", dist), dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square distance matrix")
    return arr


def minimum_spanning_tree(dist) -> Tree:
    """Kruskal MST over a complete symmetric distance matrix.

    Accepts a DistanceMatrix or any square matrix-like.  Ties are broken by
    ascending (min(u, v), max(u, v)) so the tree is deterministic.
    """
    d = _as_square_matrix(dist)
    n = d.shape[0]
    if n == 1:
        return Tree(n=1, edges=())
    iu, ju = np.triu_indices(n, k=1)
    order = np.lexsort((ju, iu, d[iu, ju]))

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges: list[tuple[int, int, float]] = []
    for idx in order:
        u, v = int(iu[idx]), int(ju[idx])
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            edges.append((u, v, float(d[u, v])))
            if len(edges) == n - 1:
                break
    return Tree(n=n, edges=tuple(edges))


def _rooted_order(t: Tree, root: int) -> tuple[list[int], list[int]]:
    """DFS order and parent array, visiting children ascending."""
    parent = [-1] * t.n
    order: list[int] = []
    visited = [False] * t.n
    stack = [root]
    while stack:
        u = stack.pop()
        if visited[u]:
            continue
        visited[u] = True
        order.append(u)
        for v in reversed(t.adjacency[u]):
            if not visited[v]:
                parent[v] = u
                stack.append(v)
    return order, parent


def tree_min_vertex_cover(t: Tree) -> tuple[int, ...]:
    """Minimum-cardinality vertex cover of a tree by rooted DP (root 0).

    Each node has two states, "in cover" and "not in cover"; when both give
    the same subtree cost the node is kept out of the cover.  Returns the
    sorted member ids.  A single-node tree has the empty cover.
    """
    if t.n == 1:
        return ()
    order, parent = _rooted_order(t, 0)
    cost_in = [1] * t.n
    cost_out = [0] * t.n
    for u in reversed(order):
        for v in t.adjacency[u]:
            if v != parent[u]:
                cost_in[u] += min(cost_in[v], cost_out[v])
                cost_out[u] += cost_in[v]

    in_cover = [False] * t.n
    root = order[0]
    in_cover[root] = cost_in[root] < cost_out[root]
    for u in order[1:]:
        if not in_cover[parent[u]]:
            in_cover[u] = True
        else:
            in_cover[u] = cost_in[u] < cost_out[u]
    return tuple(v for v in range(t.n) if in_cover[v])


def preorder(t: Tree, root: int) -> tuple[int, ...]:
    """Preorder DFS node sequence from ``root``, children ascending."""
    if not 0 <= root < t.n:
        raise ValueError(f"invalid root {root} for tree on {t.n} nodes")
    order, _ = _rooted_order(t, root)
    return tuple(order)
