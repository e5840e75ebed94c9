"""Command-line front door: plan a region, solve one TSP instance, run the
benchmark harness, or serve the HTTP API.

Exit codes: 0 success, 1 domain error (bad file, disconnected region,
pipeline failure), 2 usage error (bad flags/values, enforced by argparse).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .planner import PlanningError, build_plan, plan_to_json
from .region import RegionError, load_region
from .tsp import (
    TsplibError,
    distance_matrix,
    local_search_tour,
    parse_tsplib,
    run_benchmark,
    two_approx_tour,
)
from .tsp.bench import SOLVER_NAMES


def _positive_int(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {number}")
    return number


def _positive_float(value: str) -> float:
    number = float(value)
    if number <= 0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {number}")
    return number


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="optima",
        description="relief-distribution planning: warehouses, allocation, territories, tours",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_plan = sub.add_parser("plan", help="build a full logistics plan for a region file")
    p_plan.add_argument("region", help="path to a region JSON document")
    p_plan.add_argument("--trucks", type=_positive_int, required=True, help="number of delivery trucks")
    p_plan.add_argument("--seed", type=int, default=0, help="seed for clustering and local search")
    p_plan.add_argument("--solver", choices=SOLVER_NAMES, default="local_search")
    p_plan.add_argument("--budget-s", type=_positive_float, default=10.0, help="local search time budget")
    p_plan.add_argument("--out", help="write the plan document here (default: stdout summary only)")

    p_tsp = sub.add_parser("solve-tsp", help="solve a single TSPLIB instance")
    p_tsp.add_argument("tsp", help="path to a TSPLIB .tsp file")
    p_tsp.add_argument("--solver", choices=SOLVER_NAMES, default="local_search")
    p_tsp.add_argument("--start", type=int, default=0, help="start node (0-based)")
    p_tsp.add_argument("--seed", type=int, default=0)
    p_tsp.add_argument("--budget-s", type=_positive_float, default=10.0)

    p_bench = sub.add_parser("bench", help="run the solver comparison over a directory of instances")
    p_bench.add_argument("instances_dir", help="directory containing .tsp files")
    p_bench.add_argument("--optima-file", help="JSON file mapping instance name to optimal cost")
    p_bench.add_argument("--reps", type=_positive_int, default=1, help="runtime repetitions (median reported)")
    p_bench.add_argument("--budget-s", type=_positive_float, default=10.0)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--out", help="write the CSV report here")

    p_serve = sub.add_parser("serve", help="run the planning HTTP service")
    p_serve.add_argument("--bind", default=None, help="host:port (default $OPTIMA_BIND_ADDR or 127.0.0.1:8080)")
    p_serve.add_argument("--data-dir", default=None, help="persistence directory (default $OPTIMA_DATA_DIR)")
    return parser


def cmd_plan(args: argparse.Namespace) -> int:
    path = Path(args.region)
    try:
        with open(path, "rb") as f:
            region = load_region(f)
        plan = build_plan(
            region,
            k_trucks=args.trucks,
            seed=args.seed,
            solver=args.solver,
            time_budget_s=args.budget_s,
        )
    except OSError as exc:
        print(f"error: cannot read region file {path}: {exc}", file=sys.stderr)
        return 1
    except (RegionError, PlanningError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    doc = plan_to_json(plan)
    if args.out:
        Path(args.out).write_text(doc, encoding="utf-8")
    print(f"settlements: {plan.region.n}")
    print(f"warehouses ({len(plan.warehouse_plan.warehouses)}): "
          f"{list(plan.warehouse_plan.warehouses)}")
    print(f"service cost: {plan.warehouse_plan.service_cost_m:.1f} m")
    for route in plan.tours:
        print(
            f"truck {route.truck}: {len(route.warehouses)} stops, "
            f"tour cost {route.tour_cost_m:.1f} m, order {list(route.tour)}"
        )
    if args.out:
        print(f"plan written to {args.out}")
    return 0


def cmd_solve_tsp(args: argparse.Namespace) -> int:
    try:
        with open(args.tsp, "rb") as f:
            inst = parse_tsplib(f)
    except OSError as exc:
        print(f"error: cannot read {args.tsp}: {exc}", file=sys.stderr)
        return 1
    except TsplibError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    matrix = distance_matrix(inst)
    if not 0 <= args.start < inst.n:
        print(f"error: start node {args.start} out of range for n={inst.n}", file=sys.stderr)
        return 1
    if args.solver == "two_approx":
        tour = two_approx_tour(matrix, args.start)
    else:
        tour = local_search_tour(matrix, args.start, time_budget_s=args.budget_s, seed=args.seed)
    print(f"instance: {inst.name or Path(args.tsp).stem} (n={inst.n}, {inst.weight_kind})")
    print(f"solver: {args.solver}")
    print(f"cost: {tour.cost}")
    print("tour:", " ".join(str(v) for v in tour.order))
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    directory = Path(args.instances_dir)
    if not directory.is_dir():
        print(f"error: {directory} is not a directory", file=sys.stderr)
        return 1
    optima: dict[str, int] = {}
    if args.optima_file:
        try:
            optima = json.loads(Path(args.optima_file).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read optima file: {exc}", file=sys.stderr)
            return 1
    paths = sorted(directory.glob("*.tsp"))
    if not paths:
        print("no .tsp files found", file=sys.stderr)
    instances = [(p, optima.get(p.stem)) for p in paths]
    report = run_benchmark(
        instances,
        repetitions=args.reps,
        time_budget_s=args.budget_s,
        seed=args.seed,
    )
    print(report.format_table(), end="")
    if args.out:
        Path(args.out).write_text(report.to_csv(), encoding="utf-8")
        print(f"csv written to {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import DEFAULT_BIND_ADDR, create_app

    bind = args.bind or os.environ.get("OPTIMA_BIND_ADDR", DEFAULT_BIND_ADDR)
    host, _, port_text = bind.partition(":")
    try:
        port = int(port_text) if port_text else 8080
    except ValueError:
        print(f"error: invalid bind address {bind!r}", file=sys.stderr)
        return 1
    try:
        app = create_app(args.data_dir)
        uvicorn.run(app, host=host or "127.0.0.1", port=port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"error: cannot serve on {bind}: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "plan": cmd_plan,
        "solve-tsp": cmd_solve_tsp,
        "bench": cmd_bench,
        "serve": cmd_serve,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
