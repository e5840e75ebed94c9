/** DOM wiring for the command-center page. All planning numbers shown
 * here are read from fetched documents; this file only formats them. */

import { ApiClient, ServiceError } from './api.js';
import { comparePlans } from './compare.js';
import { buildScatterModel, renderSvg } from './scatter.js';
import {
  ViewState,
  activePlan,
  clearEdits,
  initialState,
  pickCompare,
  planFromHistory,
  selectRegion,
  setDraft,
  setError,
  stageAddSettlement,
  stageRemoveSettlement,
} from './state.js';
import { runWhatIf } from './whatif.js';
import type { RegionDocument, StoredPlan } from './types.js';

const API_BASE =
  new URLSearchParams(window.location.search).get('api') ?? 'http://127.0.0.1:8080';
const api = new ApiClient(API_BASE);

let state: ViewState = initialState();
let regionDoc: RegionDocument | null = null;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function fmtM(x: number): string {
  return `${(x / 1000).toFixed(2)} km`;
}

function renderError(): void {
  const banner = el<HTMLDivElement>('error-banner');
  banner.textContent = state.lastError ?? '';
  banner.style.display = state.lastError ? 'block' : 'none';
}

function renderScatter(): void {
  const host = el<HTMLDivElement>('scatter');
  if (!regionDoc) {
    host.innerHTML = '<p class="hint">Upload a region document to begin.</p>';
    return;
  }
  const plan = activePlan(state);
  const model = buildScatterModel(regionDoc, plan ? plan.plan : null);
  host.innerHTML = renderSvg(model);

  const legend = el<HTMLDivElement>('legend');
  if (!plan) {
    legend.innerHTML = '<span class="hint">No active plan.</span>';
    return;
  }
  const doc = plan.plan;
  const items = doc.clusters
    .map(
      (route, i) =>
        `<span class="legend-item"><span class="swatch" style="background:${model.clusterColors[i]}"></span>` +
        `truck ${route.truck}: ${route.warehouses.length} stops, ${fmtM(route.tour_cost_m)}</span>`,
    )
    .join('');
  legend.innerHTML =
    `<span class="legend-item"><strong>${doc.warehouses.length}</strong> warehouses, ` +
    `service cost ${fmtM(doc.service_cost_m)}</span>` + items;
}

function renderHistory(): void {
  const list = el<HTMLUListElement>('history');
  list.innerHTML = '';
  for (const plan of state.history) {
    const item = document.createElement('li');
    const active = plan.plan_id === state.activePlanId ? ' (viewing)' : '';
    const total = plan.plan.clusters.reduce((acc, c) => acc + c.tour_cost_m, 0);
    item.innerHTML =
      `<button class="link" data-view="${plan.plan_id}">${plan.plan_id.slice(0, 8)}</button> ` +
      `<span class="status ${plan.status}">${plan.status}</span>${active}<br>` +
      `k=${plan.params.k_trucks} seed=${plan.params.seed} ${plan.params.solver} | ` +
      `service ${fmtM(plan.plan.service_cost_m)}, tours ${fmtM(total)} ` +
      `<button data-cmp-a="${plan.plan_id}">A</button><button data-cmp-b="${plan.plan_id}">B</button>`;
    list.appendChild(item);
  }
  list.querySelectorAll<HTMLButtonElement>('button[data-view]').forEach((button) =>
    button.addEventListener('click', () => {
      state = { ...state, activePlanId: button.dataset.view! };
      renderAll();
    }),
  );
  list.querySelectorAll<HTMLButtonElement>('button[data-cmp-a]').forEach((button) =>
    button.addEventListener('click', () => {
      state = pickCompare(state, 0, button.dataset.cmpA!);
      renderAll();
    }),
  );
  list.querySelectorAll<HTMLButtonElement>('button[data-cmp-b]').forEach((button) =>
    button.addEventListener('click', () => {
      state = pickCompare(state, 1, button.dataset.cmpB!);
      renderAll();
    }),
  );
}

function renderCompare(): void {
  const host = el<HTMLDivElement>('compare');
  const [aId, bId] = state.comparePlanIds;
  const a = planFromHistory(state, aId);
  const b = planFromHistory(state, bId);
  if (!a || !b) {
    host.innerHTML = '<span class="hint">Pick plans A and B from the history to compare.</span>';
    return;
  }
  const cmp = comparePlans(a.plan, b.plan);
  const row = (label: string, va: string, vb: string, delta: string) =>
    `<tr><td>${label}</td><td>${va}</td><td>${vb}</td><td>${delta}</td></tr>`;
  host.innerHTML =
    `<table><tr><th></th><th>A ${a.plan_id.slice(0, 8)}</th>` +
    `<th>B ${b.plan_id.slice(0, 8)}</th><th>B - A</th></tr>` +
    row('service cost', fmtM(cmp.a.serviceCostM), fmtM(cmp.b.serviceCostM), fmtM(cmp.deltaServiceCostM)) +
    row('total tour cost', fmtM(cmp.a.totalTourCostM), fmtM(cmp.b.totalTourCostM), fmtM(cmp.deltaTotalTourCostM)) +
    row('warehouses', `${cmp.a.warehouseCount}`, `${cmp.b.warehouseCount}`, `${cmp.deltaWarehouseCount}`) +
    row('trucks', `${cmp.a.truckCount}`, `${cmp.b.truckCount}`, `${cmp.deltaTruckCount}`) +
    row(
      'per-truck costs',
      cmp.a.perTruckCostsM.map(fmtM).join('<br>'),
      cmp.b.perTruckCostsM.map(fmtM).join('<br>'),
      '',
    ) +
    '</table>';
}

function renderEdits(): void {
  const host = el<HTMLDivElement>('staged-edits');
  const chunks: string[] = [];
  for (const added of state.edits.added) {
    chunks.push(`+ ${added.name} (${added.lat}, ${added.lon}) pop ${added.population}`);
  }
  for (const id of state.edits.removedIds) {
    chunks.push(`- settlement #${id}`);
  }
  host.textContent = chunks.length ? chunks.join(' | ') : 'no staged edits';
}

function renderAll(): void {
  renderError();
  renderScatter();
  renderHistory();
  renderCompare();
  renderEdits();
}

async function loadRegionFromText(text: string): Promise<void> {
  try {
    const doc = JSON.parse(text) as RegionDocument;
    const stored = await api.createRegion(doc);
    regionDoc = stored.region;
    state = selectRegion(state, stored.region_id);
    el<HTMLSpanElement>('region-label').textContent =
      `${stored.region_id.slice(0, 8)} (${stored.region.settlements.length} settlements)`;
  } catch (err) {
    if (err instanceof ServiceError) state = setError(state, `${err.code}: ${err.message}`);
    else if (err instanceof SyntaxError) state = setError(state, `not valid JSON: ${err.message}`);
    else throw err;
  }
  renderAll();
}

async function refreshRegion(plan: StoredPlan): Promise<void> {
  const stored = await api.getRegion(plan.region_id);
  regionDoc = stored.region;
  el<HTMLSpanElement>('region-label').textContent =
    `${stored.region_id.slice(0, 8)} (${stored.region.settlements.length} settlements)`;
}

function wireControls(): void {
  el<HTMLInputElement>('region-file').addEventListener('change', async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (file) await loadRegionFromText(await file.text());
  });

  el<HTMLButtonElement>('run').addEventListener('click', async () => {
    state = setDraft(state, {
      k_trucks: Number(el<HTMLInputElement>('k-trucks').value),
      seed: Number(el<HTMLInputElement>('seed').value),
      solver: el<HTMLSelectElement>('solver').value as 'two_approx' | 'local_search',
    });
    const result = await runWhatIf(api, state);
    state = result.state;
    if (result.plan) await refreshRegion(result.plan);
    renderAll();
  });

  el<HTMLButtonElement>('stage-add').addEventListener('click', () => {
    const lat = Number(el<HTMLInputElement>('add-lat').value);
    const lon = Number(el<HTMLInputElement>('add-lon').value);
    const population = Number(el<HTMLInputElement>('add-pop').value);
    const name = el<HTMLInputElement>('add-name').value || 'New center';
    const roadTo = el<HTMLInputElement>('add-road-to').value;
    const roadLen = el<HTMLInputElement>('add-road-len').value;
    if (!Number.isFinite(lat) || !Number.isFinite(lon) || !Number.isFinite(population)) {
      state = setError(state, 'new settlement needs numeric lat/lon/population');
    } else {
      const draft = { name, lat, lon, population: Math.trunc(population) } as {
        name: string; lat: number; lon: number; population: number;
        roads?: { to: number; length_m: number }[];
      };
      if (roadTo !== '' && roadLen !== '') {
        draft.roads = [{ to: Number(roadTo), length_m: Number(roadLen) }];
      }
      state = stageAddSettlement(state, draft);
    }
    renderAll();
  });

  el<HTMLButtonElement>('stage-remove').addEventListener('click', () => {
    const id = Number(el<HTMLInputElement>('remove-id').value);
    if (!Number.isInteger(id) || id < 0) {
      state = setError(state, 'removal needs a settlement id');
    } else {
      state = stageRemoveSettlement(state, id);
    }
    renderAll();
  });

  el<HTMLButtonElement>('clear-edits').addEventListener('click', () => {
    state = clearEdits(state);
    renderAll();
  });
}

wireControls();
renderAll();
