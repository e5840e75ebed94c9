/** Shared document fixtures shaped exactly like the service's wire JSON. */

import type { PlanDocument, RegionDocument, StoredPlan } from '../src/types.js';

export function makeRegion(): RegionDocument {
  return {
    settlements: [
      { id: 0, name: 'Alpha', lat: 14.6, lon: 121.0, population: 12000 },
      { id: 1, name: 'Bravo', lat: 14.65, lon: 121.03, population: 8000 },
      { id: 2, name: 'Charlie', lat: 14.7, lon: 120.98, population: 0 },
      { id: 3, name: 'Delta', lat: 14.58, lon: 121.06, population: 4000 },
      { id: 4, name: 'Echo', lat: 14.72, lon: 121.1, population: 6000 },
      { id: 5, name: 'Foxtrot', lat: 14.55, lon: 120.99, population: 9000 },
    ],
    roads: [
      { u: 0, v: 1, length_m: 5000 },
      { u: 1, v: 2, length_m: 6000 },
      { u: 0, v: 3, length_m: 7000 },
      { u: 1, v: 4, length_m: 8000 },
      { u: 0, v: 5, length_m: 5500 },
    ],
  };
}

export function makePlanDoc(k: number): PlanDocument {
  const clusters = [];
  const warehouseSets = [
    [0, 1],
    [3, 5],
    [4],
  ].slice(0, k);
  for (let truck = 0; truck < k; truck++) {
    const ws = warehouseSets[truck] ?? [truck];
    clusters.push({
      truck,
      warehouses: ws,
      tour: ws,
      tour_cost_m: 1000 * (truck + 1),
    });
  }
  const warehouses = clusters.flatMap((c) => c.warehouses).sort((a, b) => a - b);
  const fractional: Record<string, number> = {};
  const integral: Record<string, number> = {};
  for (let i = 0; i < 6; i++) {
    const isWarehouse = warehouses.includes(i);
    fractional[String(i)] = isWarehouse ? 6500.5 : 0.0;
    integral[String(i)] = isWarehouse ? 6500 : 0;
  }
  return {
    params: { k_trucks: k, seed: 7, solver: 'local_search' },
    warehouses,
    mst_edges: [
      [0, 1, 5000],
      [1, 2, 6000],
      [0, 3, 7000],
      [1, 4, 8000],
      [0, 5, 5500],
    ],
    service_cost_m: 21200.5,
    allocation: { fractional, integral },
    clusters,
    seed: 7,
  };
}

let planCounter = 0;

export function makeStoredPlan(
  k: number,
  options: { supersedes?: string | null; regionId?: string; planId?: string } = {},
): StoredPlan {
  planCounter += 1;
  return {
    plan_id: options.planId ?? `plan-${String(planCounter).padStart(4, '0')}`,
    region_id: options.regionId ?? 'region-1',
    status: 'ready',
    created_at: `2026-01-01T00:00:0${planCounter % 10}Z`,
    supersedes: options.supersedes ?? null,
    params: { k_trucks: k, seed: 7, solver: 'local_search' },
    plan: makePlanDoc(k),
  };
}

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'Content-Type': 'application/json' },
  });
}
