/** Side-by-side plan comparison. Every metric is read straight off the
 * two plan documents; the only arithmetic here is sums of document fields
 * and their differences. */

import type { PlanDocument } from './types.js';

export interface PlanMetrics {
  serviceCostM: number;
  totalTourCostM: number;
  perTruckCostsM: number[];
  warehouseCount: number;
  truckCount: number;
}

export interface PlanComparison {
  a: PlanMetrics;
  b: PlanMetrics;
  deltaServiceCostM: number;
  deltaTotalTourCostM: number;
  deltaWarehouseCount: number;
  deltaTruckCount: number;
}

export function planMetrics(doc: PlanDocument): PlanMetrics {
  const perTruckCostsM = doc.clusters.map((c) => c.tour_cost_m);
  return {
    serviceCostM: doc.service_cost_m,
    totalTourCostM: perTruckCostsM.reduce((acc, x) => acc + x, 0),
    perTruckCostsM,
    warehouseCount: doc.warehouses.length,
    truckCount: doc.clusters.length,
  };
}

export function comparePlans(a: PlanDocument, b: PlanDocument): PlanComparison {
  const ma = planMetrics(a);
  const mb = planMetrics(b);
  return {
    a: ma,
    b: mb,
    deltaServiceCostM: mb.serviceCostM - ma.serviceCostM,
    deltaTotalTourCostM: mb.totalTourCostM - ma.totalTourCostM,
    deltaWarehouseCount: mb.warehouseCount - ma.warehouseCount,
    deltaTruckCount: mb.truckCount - ma.truckCount,
  };
}
