/** Thin typed client for the planning service. The dashboard derives no
 * planning math of its own: every number it shows comes from these
 * documents. */

import type {
  ApiError,
  DraftSettlement,
  PlanParams,
  PlanSummary,
  RegionDocument,
  StoredPlan,
  StoredRegion,
} from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ServiceError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export interface PlanPatch {
  k_trucks?: number;
  seed?: number;
  add_settlements?: DraftSettlement[];
  remove_settlement_ids?: number[];
}

async function parseBody<T>(response: Response): Promise<T> {
  const body = (await response.json()) as T | ApiError;
  if (!response.ok) {
    const err = body as ApiError;
    throw new ServiceError(
      response.status,
      err?.error?.code ?? 'unknown',
      err?.error?.message ?? `request failed with ${response.status}`,
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => globalThis.fetch(input, init),
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, '') + path;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchFn(this.url(path), init);
    return parseBody<T>(response);
  }

  private jsonInit(method: string, body: unknown): RequestInit {
    return {
      method,
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(body),
    };
  }

  health(): Promise<{ status: string }> {
    return this.request('/healthz');
  }

  createRegion(doc: RegionDocument): Promise<StoredRegion> {
    return this.request('/regions', this.jsonInit('POST', doc));
  }

  getRegion(regionId: string): Promise<StoredRegion> {
    return this.request(`/regions/${regionId}`);
  }

  createPlan(regionId: string, params: PlanParams): Promise<StoredPlan> {
    return this.request(`/regions/${regionId}/plans`, this.jsonInit('POST', params));
  }

  getPlan(planId: string): Promise<StoredPlan> {
    return this.request(`/plans/${planId}`);
  }

  listPlans(regionId: string): Promise<PlanSummary[]> {
    return this.request(`/regions/${regionId}/plans`);
  }

  patchPlan(planId: string, patch: PlanPatch): Promise<StoredPlan> {
    return this.request(`/plans/${planId}`, this.jsonInit('PATCH', patch));
  }
}
