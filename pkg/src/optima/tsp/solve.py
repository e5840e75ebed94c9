"""Closed-tour solvers over a symmetric distance matrix.

Two solvers with very different guarantees:

* ``two_approx_tour`` — spanning-tree walk with shortcutting; at most twice
  the optimal cost whenever the matrix is metric.
* ``local_search_tour`` — nearest-neighbor construction, best-improvement
  2-opt and or-opt to a joint fixed point, then a fixed number of seeded
  double-bridge kicks with re-optimization.  Deterministic for a given
  (matrix, start, seed) as long as the time budget does not cut it short.

Both solvers are generic over integer (TSPLIB) and real (meter) weights.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass

import numpy as np

from ..graphs import minimum_spanning_tree, preorder

_EPS = 1e-9


@dataclass(frozen=True)
class Tour:
    """A closed tour: ``order`` is a permutation of 0..n-1, cost includes
    the edge back from the last node to the first."""

    order: tuple[int, ...]
    cost: float


def _as_matrix(m) -> np.ndarray:
    arr = np.asarray(getattr(m, "d", m))
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square distance matrix")
    return arr


def _check_permutation(order, n: int) -> None:
    if len(order) != n or sorted(order) != list(range(n)):
        raise ValueError(f"tour is not a permutation of 0..{n - 1}: {order!r}")


def _native_cost(m: np.ndarray, total: float):
    return int(total) if np.issubdtype(m.dtype, np.integer) else float(total)


def tour_cost(m, tour):
    """Cost of the closed tour, integer for integer matrices."""
    arr = _as_matrix(m)
    n = arr.shape[0]
    _check_permutation(list(tour), n)
    t = np.asarray(tour)
    return _native_cost(arr, arr[t, np.roll(t, -1)].sum())


def percent_gap(cost: float, optimal: float) -> float:
    if optimal <= 0:
        raise ValueError(f"optimal cost must be > 0, got {optimal}")
    return 100.0 * (cost - optimal) / optimal


def two_approx_tour(m, start: int = 0) -> Tour:
    """Spanning-tree tour: MST, preorder walk from ``start``, repeated
    nodes shortcut.  Cost at most 2x optimal under the triangle
    inequality (not enforced)."""
    arr = _as_matrix(m)
    n = arr.shape[0]
    if not 0 <= start < n:
        raise ValueError(f"invalid start node {start} for n={n}")
    mst = minimum_spanning_tree(arr)
    order = preorder(mst, start)
    return Tour(order=order, cost=tour_cost(arr, order))


def _nearest_neighbor(d: np.ndarray, start: int) -> np.ndarray:
    n = d.shape[0]
    order = np.empty(n, dtype=np.intp)
    order[0] = start
    visited = np.zeros(n, dtype=bool)
    visited[start] = True
    cur = start
    row = np.empty(n, dtype=float)
    for k in range(1, n):
        np.copyto(row, d[cur], casting="unsafe")
        row[visited] = np.inf
        cur = int(np.argmin(row))  # ties: lowest node id
        order[k] = cur
        visited[cur] = True
    return order


def _cycle_cost(d: np.ndarray, t: np.ndarray) -> float:
    return float(d[t, np.roll(t, -1)].sum())


def _best_two_opt_move(d: np.ndarray, t: np.ndarray) -> bool:
    """Apply the single best 2-opt segment reversal.  True if it improved."""
    s = np.roll(t, -1)
    c1 = d[t, s].astype(float)
    gain = c1[:, None] + c1[None, :] - d[np.ix_(t, t)] - d[np.ix_(s, s)]
    gain = np.triu(gain, k=1)
    flat = int(np.argmax(gain))
    i, j = divmod(flat, t.size)
    if gain[i, j] <= _EPS:
        return False
    t[i + 1 : j + 1] = t[i + 1 : j + 1][::-1]
    return True


def _best_or_opt_move(d: np.ndarray, t: np.ndarray) -> np.ndarray | None:
    """Best relocation of a 1..3-node segment, either orientation.

    Returns the new tour array, or None when no move improves.
    """
    n = t.size
    s = np.roll(t, -1)
    c1 = d[t, s].astype(float)
    j_idx = np.arange(n)

    best_gain = _EPS
    best = None
    for seg_len in (1, 2, 3):
        if n - seg_len < 3:
            continue
        a = np.arange(1, n - seg_len)  # segment t[a : a+seg_len], interior only
        prevs = t[a - 1]
        firsts = t[a]
        lasts = t[a + seg_len - 1]
        nexts = t[a + seg_len]
        removal = d[prevs, firsts] + d[lasts, nexts] - d[prevs, nexts]

        invalid = (j_idx[None, :] >= (a - 1)[:, None]) & (
            j_idx[None, :] <= (a + seg_len - 1)[:, None]
        )
        for reverse in (False, True):
            head, tail = (lasts, firsts) if reverse else (firsts, lasts)
            add = d[np.ix_(head, t)].T + d[np.ix_(tail, s)].T - c1[:, None]
            gain = removal[None, :] - add  # [j, a]
            gain[invalid.T] = -np.inf
            flat = int(np.argmax(gain))
            j, ai = divmod(flat, a.size)
            if gain[j, ai] > best_gain:
                best_gain = float(gain[j, ai])
                best = (int(a[ai]), seg_len, int(j), reverse)

    if best is None:
        return None
    a0, seg_len, j, reverse = best
    lst = t.tolist()
    seg = lst[a0 : a0 + seg_len]
    anchor = lst[j]
    del lst[a0 : a0 + seg_len]
    if reverse:
        seg.reverse()
    pos = lst.index(anchor)
    lst[pos + 1 : pos + 1] = seg
    return np.array(lst, dtype=np.intp)


def _optimize(d: np.ndarray, t: np.ndarray) -> np.ndarray:
    """2-opt and or-opt, alternating until neither finds a move."""
    while True:
        improved = False
        while _best_two_opt_move(d, t):
            improved = True
        while True:
            nxt = _best_or_opt_move(d, t)
            if nxt is None:
                break
            t = nxt
            improved = True
        if not improved:
            return t


def _double_bridge(t: np.ndarray, rng: random.Random) -> np.ndarray:
    n = t.size
    p1, p2, p3 = sorted(rng.sample(range(1, n), 3))
    return np.concatenate([t[:p1], t[p2:p3], t[p1:p2], t[p3:]])


def _kick_rounds(n: int) -> int:
    # fixed per size so results do not depend on machine speed
    if n < 4:
        return 0
    return 200


def local_search_tour(m, start: int = 0, time_budget_s: float = 10.0, seed: int = 0) -> Tour:
    """Nearest neighbor + 2-opt + or-opt, then seeded double-bridge kicks.

    The kick count is fixed per instance size; the wall-clock budget only
    cuts the kick phase short as a safety valve.
    """
    arr = _as_matrix(m)
    n = arr.shape[0]
    if not 0 <= start < n:
        raise ValueError(f"invalid start node {start} for n={n}")
    if n == 1:
        return Tour(order=(start,), cost=_native_cost(arr, 0))

    deadline = time.monotonic() + time_budget_s
    d = arr.astype(float)
    t = _nearest_neighbor(d, start)
    t = _optimize(d, t)
    best = t
    best_cost = _cycle_cost(d, best)

    rng = random.Random(seed)
    for _ in range(_kick_rounds(n)):
        if time.monotonic() >= deadline:
            break
        cand = _optimize(d, _double_bridge(best, rng))
        cand_cost = _cycle_cost(d, cand)
        if cand_cost < best_cost - _EPS:
            best, best_cost = cand, cand_cost

    shift = int(np.nonzero(best == start)[0][0])
    order = tuple(int(x) for x in np.roll(best, -shift))
    return Tour(order=order, cost=tour_cost(arr, order))
