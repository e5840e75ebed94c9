/** Wire types mirroring the planning service's JSON documents. */

export interface Settlement {
  id: number;
  name: string;
  lat: number;
  lon: number;
  population: number;
}

export interface RoadEdge {
  u: number;
  v: number;
  length_m: number;
}

export interface RegionDocument {
  settlements: Settlement[];
  roads: RoadEdge[];
}

export interface StoredRegion {
  region_id: string;
  created_at: string;
  region: RegionDocument;
}

export interface PlanParams {
  k_trucks: number;
  seed: number;
  solver: 'two_approx' | 'local_search';
  time_budget_s?: number;
}

export interface ClusterRoute {
  truck: number;
  warehouses: number[];
  tour: number[];
  tour_cost_m: number;
}

export interface PlanDocument {
  params: PlanParams;
  warehouses: number[];
  mst_edges: [number, number, number][];
  service_cost_m: number;
  allocation: {
    fractional: Record<string, number>;
    integral: Record<string, number>;
  };
  clusters: ClusterRoute[];
  seed: number;
}

export interface StoredPlan {
  plan_id: string;
  region_id: string;
  status: 'ready' | 'superseded';
  created_at: string;
  seq?: number;
  supersedes: string | null;
  params: PlanParams;
  plan: PlanDocument;
}

export interface PlanSummary {
  plan_id: string;
  region_id: string;
  status: string;
  created_at: string;
  params: PlanParams;
  service_cost_m: number;
  total_tour_cost_m: number;
}

export interface ApiError {
  error: { code: string; message: string };
}

/** A settlement staged for addition, matching the PATCH schema. */
export interface DraftSettlement {
  name: string;
  lat: number;
  lon: number;
  population: number;
  roads?: { to: number; length_m: number }[];
}
