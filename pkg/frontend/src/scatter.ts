/** Scatter view model: projects settlements onto a fixed viewport, sizes
 * points by population, colors warehouses by cluster, and builds closed
 * tour polylines. Pure data in, pure data out, so it is unit-testable and
 * deterministic for a given (region, plan) pair; `renderSvg` serializes
 * the model to an SVG string. */

import { NEUTRAL_POINT, WAREHOUSE_STROKE, clusterColor } from './colors.js';
import type { PlanDocument, RegionDocument } from './types.js';

export interface ViewportSpec {
  width: number;
  height: number;
  padding: number;
}

export const DEFAULT_VIEWPORT: ViewportSpec = { width: 800, height: 560, padding: 40 };

export interface ScatterPoint {
  id: number;
  name: string;
  x: number;
  y: number;
  radius: number;
  fill: string;
  isWarehouse: boolean;
  cluster: number | null;
  title: string;
}

export interface TourPolyline {
  cluster: number;
  color: string;
  /** Closed loop: first point repeated at the end. */
  points: { x: number; y: number }[];
  costM: number;
}

export interface ScatterModel {
  viewport: ViewportSpec;
  points: ScatterPoint[];
  tours: TourPolyline[];
  /** Distinct colors actually used by clusters, in cluster order. */
  clusterColors: string[];
}

const MIN_RADIUS = 3;
const MAX_RADIUS = 14;

function makeProjection(region: RegionDocument, viewport: ViewportSpec) {
  const lats = region.settlements.map((s) => s.lat);
  const lons = region.settlements.map((s) => s.lon);
  const latMin = Math.min(...lats);
  const latMax = Math.max(...lats);
  const lonMin = Math.min(...lons);
  const lonMax = Math.max(...lons);
  const latSpan = latMax - latMin || 1e-9;
  const lonSpan = lonMax - lonMin || 1e-9;
  const innerW = viewport.width - 2 * viewport.padding;
  const innerH = viewport.height - 2 * viewport.padding;
  return (lat: number, lon: number) => ({
    x: viewport.padding + ((lon - lonMin) / lonSpan) * innerW,
    // larger latitude is further north, i.e. a smaller SVG y
    y: viewport.padding + ((latMax - lat) / latSpan) * innerH,
  });
}

function radiusFor(population: number, maxPopulation: number): number {
  if (maxPopulation <= 0) return MIN_RADIUS;
  const scale = Math.sqrt(population / maxPopulation);
  return MIN_RADIUS + (MAX_RADIUS - MIN_RADIUS) * scale;
}

export function buildScatterModel(
  region: RegionDocument,
  plan: PlanDocument | null,
  viewport: ViewportSpec = DEFAULT_VIEWPORT,
): ScatterModel {
  const project = makeProjection(region, viewport);
  const maxPopulation = Math.max(...region.settlements.map((s) => s.population));

  const clusterOf = new Map<number, number>();
  if (plan) {
    for (const route of plan.clusters) {
      for (const id of route.warehouses) clusterOf.set(id, route.truck);
    }
  }

  const points: ScatterPoint[] = region.settlements.map((s) => {
    const { x, y } = project(s.lat, s.lon);
    const cluster = clusterOf.has(s.id) ? clusterOf.get(s.id)! : null;
    const isWarehouse = plan !== null && plan.warehouses.includes(s.id);
    const fill = cluster !== null ? clusterColor(cluster) : NEUTRAL_POINT;
    let title = `${s.name} (#${s.id}) pop ${s.population}`;
    if (plan && isWarehouse) {
      const allocated = plan.allocation.integral[String(s.id)] ?? 0;
      title += ` | warehouse, truck ${cluster}, allocation ${allocated}`;
    }
    return {
      id: s.id,
      name: s.name,
      x,
      y,
      radius: radiusFor(s.population, maxPopulation),
      fill,
      isWarehouse,
      cluster,
      title,
    };
  });

  const byId = new Map(region.settlements.map((s) => [s.id, s]));
  const tours: TourPolyline[] = [];
  if (plan) {
    for (const route of plan.clusters) {
      const loop = [...route.tour, route.tour[0]]
        .map((id) => byId.get(id))
        .filter((s) => s !== undefined)
        .map((s) => project(s!.lat, s!.lon));
      tours.push({
        cluster: route.truck,
        color: clusterColor(route.truck),
        points: loop,
        costM: route.tour_cost_m,
      });
    }
  }

  const clusterColors = plan ? plan.clusters.map((route) => clusterColor(route.truck)) : [];
  return { viewport, points, tours, clusterColors };
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

export function renderSvg(model: ScatterModel): string {
  const { width, height } = model.viewport;
  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" width="${width}" height="${height}">`,
    `<rect width="${width}" height="${height}" fill="#fcfcfc"/>`,
  ];
  for (const tour of model.tours) {
    if (tour.points.length < 2) continue;
    const pts = tour.points.map((p) => `${p.x.toFixed(1)},${p.y.toFixed(1)}`).join(' ');
    parts.push(
      `<polyline data-cluster="${tour.cluster}" points="${pts}" fill="none" ` +
        `stroke="${tour.color}" stroke-width="1.5" stroke-opacity="0.85"/>`,
    );
  }
  for (const point of model.points) {
    const stroke = point.isWarehouse
      ? ` stroke="${WAREHOUSE_STROKE}" stroke-width="2"`
      : '';
    parts.push(
      `<circle data-id="${point.id}" cx="${point.x.toFixed(1)}" cy="${point.y.toFixed(1)}" ` +
        `r="${point.radius.toFixed(1)}" fill="${point.fill}" fill-opacity="0.9"${stroke}>` +
        `<title>${escapeXml(point.title)}</title></circle>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}
