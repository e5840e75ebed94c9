"""REST planning service: regions and plans as immutable resources with
file-backed persistence.

Store layout under the data directory: ``regions/{id}.json`` and
``plans/{id}.json``, written atomically (tmp + rename).  Plans are never
mutated except for the ``status`` flip to ``superseded`` when an update
derives a replacement; what-if history is the chain of plans linked by
``supersedes``.  Reads go straight to disk, so a process restart serves
identical documents.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .planner import PlanningError, build_plan, plan_document
from .region import (
    DisconnectedRegionError,
    RegionError,
    RegionGraph,
    RoadEdge,
    Settlement,
    region_from_document,
    region_to_document,
)

DEFAULT_BIND_ADDR = "127.0.0.1:8080"

_PARAM_FIELDS = {"k_trucks", "seed", "solver", "time_budget_s"}
_PATCH_FIELDS = {"k_trucks", "seed", "add_settlements", "remove_settlement_ids"}
_ADD_SETTLEMENT_FIELDS = {"name", "lat", "lon", "population", "roads"}


class ServiceError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


class NotFound(ServiceError):
    def __init__(self, what: str, ident: str):
        super().__init__(404, "not_found", f"{what} {ident} does not exist")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


def _validate_params(body: Any) -> dict:
    if not isinstance(body, dict):
        raise ServiceError(422, "invalid_params", "request body must be a JSON object")
    unknown = set(body) - _PARAM_FIELDS
    if unknown:
        raise ServiceError(422, "invalid_params", f"unknown field(s) {sorted(unknown)}")
    for req in ("k_trucks", "seed", "solver"):
        if req not in body:
            raise ServiceError(422, "invalid_params", f"missing field {req!r}")
    k = body["k_trucks"]
    seed = body["seed"]
    solver = body["solver"]
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ServiceError(422, "invalid_params", "k_trucks must be a positive integer")
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ServiceError(422, "invalid_params", "seed must be an integer")
    if solver not in ("two_approx", "local_search"):
        raise ServiceError(422, "invalid_params", "solver must be two_approx or local_search")
    params = {"k_trucks": k, "seed": seed, "solver": solver}
    if "time_budget_s" in body:
        budget = body["time_budget_s"]
        if isinstance(budget, bool) or not isinstance(budget, (int, float)) or budget <= 0:
            raise ServiceError(422, "invalid_params", "time_budget_s must be a positive number")
        params["time_budget_s"] = float(budget)
    else:
        params["time_budget_s"] = 10.0
    return params


class FileStore:
    """Single-writer, multi-reader document store on local disk."""

    def __init__(self, data_dir: str | Path):
        self.root = Path(data_dir)
        self.regions_dir = self.root / "regions"
        self.plans_dir = self.root / "plans"
        try:
            self.regions_dir.mkdir(parents=True, exist_ok=True)
            self.plans_dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise ServiceError(507, "storage_failure", f"cannot create data directory: {exc}")
        self._write_lock = threading.Lock()

    # -- low-level document io ------------------------------------------

    def _write(self, path: Path, doc: dict) -> None:
        tmp = path.with_suffix(".tmp")
        try:
            tmp.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
            os.replace(tmp, path)
        except OSError as exc:
            raise ServiceError(507, "storage_failure", str(exc))

    def _read(self, path: Path) -> dict | None:
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            return None
        except OSError as exc:
            raise ServiceError(507, "storage_failure", str(exc))

    def _next_seq(self) -> int:
        best = 0
        for path in self.plans_dir.glob("*.json"):
            doc = self._read(path)
            if doc:
                best = max(best, doc.get("seq", 0))
        return best + 1

    # -- regions ---------------------------------------------------------

    def create_region(self, body: Any) -> dict:
        try:
            region = region_from_document(body)
        except RegionError as exc:
            raise ServiceError(400, "invalid_region", str(exc))
        region_id = uuid.uuid4().hex
        doc = {
            "region_id": region_id,
            "created_at": _now(),
            "region": region_to_document(region),
        }
        with self._write_lock:
            self._write(self.regions_dir / f"{region_id}.json", doc)
        return doc

    def get_region(self, region_id: str) -> dict:
        doc = self._read(self.regions_dir / f"{region_id}.json")
        if doc is None:
            raise NotFound("region", region_id)
        return doc

    def load_region_graph(self, region_id: str) -> RegionGraph:
        return region_from_document(self.get_region(region_id)["region"])

    # -- plans -----------------------------------------------------------

    def _plan_path(self, plan_id: str) -> Path:
        return self.plans_dir / f"{plan_id}.json"

    def get_plan(self, plan_id: str) -> dict:
        doc = self._read(self._plan_path(plan_id))
        if doc is None:
            raise NotFound("plan", plan_id)
        return doc

    def list_plans(self, region_id: str) -> list[dict]:
        self.get_region(region_id)  # 404 on unknown region
        out = []
        for path in sorted(self.plans_dir.glob("*.json")):
            doc = self._read(path)
            if doc and doc.get("region_id") == region_id:
                out.append(doc)
        out.sort(key=lambda d: d.get("seq", 0), reverse=True)
        return [
            {
                "plan_id": d["plan_id"],
                "region_id": d["region_id"],
                "status": d["status"],
                "created_at": d["created_at"],
                "params": d["params"],
                "service_cost_m": d["plan"]["service_cost_m"],
                "total_tour_cost_m": sum(c["tour_cost_m"] for c in d["plan"]["clusters"]),
            }
            for d in out
        ]

    def _find_ready_plan(self, region_id: str, params: dict) -> dict | None:
        for path in sorted(self.plans_dir.glob("*.json")):
            doc = self._read(path)
            if (
                doc
                and doc.get("region_id") == region_id
                and doc.get("status") == "ready"
                and doc.get("params") == params
            ):
                return doc
        return None

    def _compute_plan_doc(self, region: RegionGraph, params: dict) -> dict:
        try:
            plan = build_plan(
                region,
                k_trucks=params["k_trucks"],
                seed=params["seed"],
                solver=params["solver"],
                time_budget_s=params["time_budget_s"],
            )
        except DisconnectedRegionError as exc:
            raise ServiceError(409, "region_disconnected", str(exc))
        except PlanningError as exc:
            raise ServiceError(422, "invalid_params", str(exc))
        return plan_document(plan)

    def create_plan(self, region_id: str, body: Any) -> tuple[dict, bool]:
        """Compute and persist a plan; returns (document, created).

        Identical (region, params) with a ready plan is idempotent: the
        stored plan is returned instead of a duplicate.
        """
        params = _validate_params(body)
        region = self.load_region_graph(region_id)
        with self._write_lock:
            existing = self._find_ready_plan(region_id, params)
            if existing is not None:
                return existing, False
            plan_doc = self._compute_plan_doc(region, params)
            doc = {
                "plan_id": uuid.uuid4().hex,
                "region_id": region_id,
                "status": "ready",
                "created_at": _now(),
                "seq": self._next_seq(),
                "supersedes": None,
                "params": params,
                "plan": plan_doc,
            }
            self._write(self._plan_path(doc["plan_id"]), doc)
        return doc, True

    def _apply_region_patch(self, region: RegionGraph, patch: dict) -> RegionGraph:
        removed = patch.get("remove_settlement_ids", [])
        if not isinstance(removed, list) or any(
            isinstance(x, bool) or not isinstance(x, int) for x in removed
        ):
            raise ServiceError(422, "invalid_patch", "remove_settlement_ids must be a list of ids")
        removed_set = set(removed)
        for rid in removed_set:
            if not 0 <= rid < region.n:
                raise ServiceError(422, "invalid_patch", f"cannot remove unknown settlement {rid}")

        additions = patch.get("add_settlements", [])
        if not isinstance(additions, list):
            raise ServiceError(422, "invalid_patch", "add_settlements must be a list")

        keep = [s for s in region.settlements if s.id not in removed_set]
        if not keep and not additions:
            raise ServiceError(422, "invalid_patch", "region must keep >=1 settlement")
        remap = {s.id: new_id for new_id, s in enumerate(keep)}
        settlements = [
            Settlement(id=remap[s.id], name=s.name, lat=s.lat, lon=s.lon, population=s.population)
            for s in keep
        ]
        roads = [
            RoadEdge(u=remap[r.u], v=remap[r.v], length_m=r.length_m)
            for r in region.roads
            if r.u in remap and r.v in remap
        ]

        for idx, item in enumerate(additions):
            where = f"add_settlements[{idx}]"
            if not isinstance(item, dict):
                raise ServiceError(422, "invalid_patch", f"{where} must be an object")
            unknown = set(item) - _ADD_SETTLEMENT_FIELDS
            if unknown:
                raise ServiceError(422, "invalid_patch", f"{where}: unknown field(s) {sorted(unknown)}")
            missing = {"name", "lat", "lon", "population"} - set(item)
            if missing:
                raise ServiceError(422, "invalid_patch", f"{where}: missing field(s) {sorted(missing)}")
            new_id = len(settlements)
            try:
                settlements.append(
                    Settlement(
                        id=new_id,
                        name=item["name"],
                        lat=float(item["lat"]),
                        lon=float(item["lon"]),
                        population=int(item["population"]),
                    )
                )
                for road in item.get("roads") or []:
                    if not isinstance(road, dict) or set(road) != {"to", "length_m"}:
                        raise ServiceError(
                            422, "invalid_patch", f"{where}.roads entries need exactly to/length_m"
                        )
                    to = road["to"]
                    if isinstance(to, bool) or not isinstance(to, int) or not 0 <= to < new_id:
                        raise ServiceError(422, "invalid_patch", f"{where}: road endpoint {to!r} unknown")
                    roads.append(RoadEdge(u=to, v=new_id, length_m=float(road["length_m"])))
            except RegionError as exc:
                raise ServiceError(422, "invalid_patch", f"{where}: {exc}")
            except (TypeError, ValueError) as exc:
                raise ServiceError(422, "invalid_patch", f"{where}: {exc}")

        try:
            return RegionGraph(settlements=tuple(settlements), roads=tuple(roads))
        except RegionError as exc:
            raise ServiceError(422, "invalid_patch", str(exc))

    def update_plan(self, plan_id: str, patch: Any) -> dict:
        """Derive a modified region/parameters, recompute, supersede."""
        if not isinstance(patch, dict):
            raise ServiceError(422, "invalid_patch", "request body must be a JSON object")
        unknown = set(patch) - _PATCH_FIELDS
        if unknown:
            raise ServiceError(422, "invalid_patch", f"unknown field(s) {sorted(unknown)}")

        old = self.get_plan(plan_id)
        params = dict(old["params"])
        if "k_trucks" in patch:
            k = patch["k_trucks"]
            if isinstance(k, bool) or not isinstance(k, int) or k < 1:
                raise ServiceError(422, "invalid_patch", "k_trucks must be a positive integer")
            params["k_trucks"] = k
        if "seed" in patch:
            seed = patch["seed"]
            if isinstance(seed, bool) or not isinstance(seed, int):
                raise ServiceError(422, "invalid_patch", "seed must be an integer")
            params["seed"] = seed

        region = self.load_region_graph(old["region_id"])
        region_id = old["region_id"]
        region_changed = bool(patch.get("add_settlements")) or bool(
            patch.get("remove_settlement_ids")
        )
        if region_changed:
            region = self._apply_region_patch(region, patch)

        with self._write_lock:
            if region_changed:
                region_doc = {
                    "region_id": uuid.uuid4().hex,
                    "created_at": _now(),
                    "region": region_to_document(region),
                    "derived_from": old["region_id"],
                }
                self._write(self.regions_dir / f"{region_doc['region_id']}.json", region_doc)
                region_id = region_doc["region_id"]

            plan_doc = self._compute_plan_doc(region, params)
            doc = {
                "plan_id": uuid.uuid4().hex,
                "region_id": region_id,
                "status": "ready",
                "created_at": _now(),
                "seq": self._next_seq(),
                "supersedes": plan_id,
                "params": params,
                "plan": plan_doc,
            }
            self._write(self._plan_path(doc["plan_id"]), doc)
            old["status"] = "superseded"
            self._write(self._plan_path(plan_id), old)
        return doc


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    """Build the HTTP app over a file store rooted at ``data_dir``
    (default: $OPTIMA_DATA_DIR or ./optima-data)."""
    if data_dir is None:
        data_dir = os.environ.get("OPTIMA_DATA_DIR", "optima-data")
    store = FileStore(data_dir)
    app = FastAPI(title="relief distribution planning service")
    app.state.store = store

    @app.exception_handler(ServiceError)
    async def service_error_handler(_request: Request, exc: ServiceError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.exception_handler(Exception)
    async def unexpected_error_handler(_request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"error": {"code": "internal", "message": str(exc)}},
        )

    async def read_json(request: Request) -> Any:
        try:
            return json.loads(await request.body())
        except json.JSONDecodeError as exc:
            raise ServiceError(400, "invalid_json", f"request body is not valid JSON: {exc}")

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/regions", status_code=201)
    async def create_region(request: Request):
        return store.create_region(await read_json(request))

    @app.get("/regions/{region_id}")
    def get_region(region_id: str):
        return store.get_region(region_id)

    @app.post("/regions/{region_id}/plans")
    async def create_plan(region_id: str, request: Request):
        doc, created = store.create_plan(region_id, await read_json(request))
        return JSONResponse(status_code=201 if created else 200, content=doc)

    @app.get("/regions/{region_id}/plans")
    def list_plans(region_id: str):
        return store.list_plans(region_id)

    @app.get("/plans/{plan_id}")
    def get_plan(plan_id: str):
        return store.get_plan(plan_id)

    @app.patch("/plans/{plan_id}")
    async def update_plan(plan_id: str, request: Request):
        return store.update_plan(plan_id, await read_json(request))

    return app
