"""Benchmark harness: run each solver on each instance, record cost,
percent gap to the known optimum, and median wall-clock runtime."""

from __future__ import annotations

import statistics
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .solve import Tour, local_search_tour, percent_gap, two_approx_tour
from .tsplib import TspInstance, TsplibError, distance_matrix, parse_tsplib

SOLVER_NAMES = ("two_approx", "local_search")


def _run_solver(name: str, matrix, start: int, time_budget_s: float, seed: int) -> Tour:
    if name == "two_approx":
        return two_approx_tour(matrix, start)
    if name == "local_search":
        return local_search_tour(matrix, start, time_budget_s=time_budget_s, seed=seed)
    raise ValueError(f"unknown solver: {name}")


@dataclass(frozen=True)
class BenchRow:
    name: str
    n: int
    optimal: int | None
    solver: str
    cost: float
    gap_pct: float | None
    runtime_s: float


@dataclass(frozen=True)
class BenchReport:
    rows: tuple[BenchRow, ...]
    failures: tuple[tuple[str, str], ...] = ()

    def to_csv(self) -> str:
        lines = ["name,n,optimal,solver,cost,gap_pct,runtime_s"]
        for r in self.rows:
            optimal = "" if r.optimal is None else str(r.optimal)
            gap = "" if r.gap_pct is None else f"{r.gap_pct:.4f}"
            lines.append(f"{r.name},{r.n},{optimal},{r.solver},{r.cost},{gap},{r.runtime_s:.6f}")
        return "\n".join(lines) + "\n"

    def format_table(self) -> str:
        header = (
            f"{'instance':<12}{'n':>6}{'optimal':>10}"
            f"{'solver':>14}{'cost':>12}{'gap %':>9}{'time (s)':>10}"
        )
        out = [header, "-" * len(header)]
        for r in self.rows:
            optimal = "-" if r.optimal is None else str(r.optimal)
            gap = "-" if r.gap_pct is None else f"{r.gap_pct:.2f}"
            out.append(
                f"{r.name:<12}{r.n:>6}{optimal:>10}"
                f"{r.solver:>14}{r.cost:>12}{gap:>9}{r.runtime_s:>10.4f}"
            )
        for path, message in self.failures:
            out.append(f"FAILED {path}: {message}")
        return "\n".join(out) + "\n"


def run_benchmark(
    instances: Iterable[tuple[str | Path, int | None]],
    solvers: Sequence[str] = SOLVER_NAMES,
    repetitions: int = 1,
    time_budget_s: float = 10.0,
    seed: int = 0,
) -> BenchReport:
    """Solve every instance with every solver.

    ``instances`` pairs a TSPLIB file path with its known optimum (or None).
    Parse failures are recorded per instance and the rest still run.  Costs
    are deterministic; runtimes are the median over ``repetitions``.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    rows: list[BenchRow] = []
    failures: list[tuple[str, str]] = []
    for path, optimal in instances:
        try:
            inst = parse_tsplib(Path(path).read_bytes())
        except (TsplibError, OSError, ValueError) as exc:
            failures.append((str(path), str(exc)))
            continue
        name = inst.name or Path(path).stem
        matrix = distance_matrix(inst)
        for solver in solvers:
            times = []
            tour = None
            for _ in range(repetitions):
                t0 = time.perf_counter()
                result = _run_solver(solver, matrix, 0, time_budget_s, seed)
                times.append(time.perf_counter() - t0)
                if tour is not None and result.cost != tour.cost:
                    raise AssertionError(f"nondeterministic cost on {name}/{solver}")
                tour = result
            gap = None if optimal is None else percent_gap(tour.cost, optimal)
            rows.append(
                BenchRow(
                    name=name,
                    n=inst.n,
                    optimal=optimal,
                    solver=solver,
                    cost=tour.cost,
                    gap_pct=gap,
                    runtime_s=statistics.median(times),
                )
            )
    return BenchReport(rows=tuple(rows), failures=tuple(failures))
