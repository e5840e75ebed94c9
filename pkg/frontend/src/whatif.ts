/** What-if orchestration: apply the staged draft (parameters and region
 * edits) through the service and fold the returned plan into view state.
 * Validation failures never reach the server; server 4xx errors land in
 * `lastError` for inline display. */

import { ApiClient, PlanPatch, ServiceError } from './api.js';
import {
  ViewState,
  activePlan,
  draftAsParams,
  hasPendingEdits,
  recordPlan,
  setError,
  validateDraft,
} from './state.js';
import type { StoredPlan } from './types.js';

export interface WhatIfResult {
  state: ViewState;
  plan: StoredPlan | null;
}

export async function runWhatIf(api: ApiClient, state: ViewState): Promise<WhatIfResult> {
  const validation = validateDraft(state.draft);
  if (validation !== null) {
    return { state: setError(state, validation), plan: null };
  }
  if (!state.regionId) {
    return { state: setError(state, 'select or upload a region first'), plan: null };
  }

  const current = activePlan(state);
  try {
    let plan: StoredPlan;
    if (current === null) {
      if (hasPendingEdits(state)) {
        return {
          state: setError(state, 'run a baseline plan before staging settlement edits'),
          plan: null,
        };
      }
      plan = await api.createPlan(state.regionId, draftAsParams(state.draft));
    } else if (state.draft.solver !== current.params.solver) {
      if (hasPendingEdits(state)) {
        return {
          state: setError(state, 'apply settlement edits before switching solver'),
          plan: null,
        };
      }
      plan = await api.createPlan(state.regionId, draftAsParams(state.draft));
    } else {
      const patch: PlanPatch = {};
      if (state.draft.k_trucks !== current.params.k_trucks) {
        patch.k_trucks = state.draft.k_trucks;
      }
      if (state.draft.seed !== current.params.seed) {
        patch.seed = state.draft.seed;
      }
      if (state.edits.added.length > 0) {
        patch.add_settlements = state.edits.added;
      }
      if (state.edits.removedIds.length > 0) {
        patch.remove_settlement_ids = state.edits.removedIds;
      }
      if (Object.keys(patch).length === 0) {
        // nothing changed; refresh the active plan rather than duplicating
        plan = await api.getPlan(current.plan_id);
      } else {
        plan = await api.patchPlan(current.plan_id, patch);
      }
    }
    const next = recordPlan({ ...state, regionId: plan.region_id }, plan);
    return { state: next, plan };
  } catch (err) {
    if (err instanceof ServiceError) {
      return { state: setError(state, `${err.code}: ${err.message}`), plan: null };
    }
    throw err;
  }
}
