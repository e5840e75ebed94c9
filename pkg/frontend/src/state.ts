/** Dashboard view state and its pure transitions.
 *
 * Draft parameters and staged settlement edits live only in this state
 * until the operator applies them; nothing here talks to the server.
 * History mirrors the server's supersession chain: newest first, each
 * entry a fetched StoredPlan.
 */

import type { DraftSettlement, PlanParams, StoredPlan } from './types.js';

export interface DraftParams {
  k_trucks: number;
  seed: number;
  solver: 'two_approx' | 'local_search';
}

export interface PendingEdits {
  added: DraftSettlement[];
  removedIds: number[];
}

export interface ViewState {
  regionId: string | null;
  activePlanId: string | null;
  draft: DraftParams;
  edits: PendingEdits;
  history: StoredPlan[];
  comparePlanIds: [string | null, string | null];
  lastError: string | null;
}

export function initialState(): ViewState {
  return {
    regionId: null,
    activePlanId: null,
    draft: { k_trucks: 2, seed: 0, solver: 'local_search' },
    edits: { added: [], removedIds: [] },
    history: [],
    comparePlanIds: [null, null],
    lastError: null,
  };
}

export function selectRegion(state: ViewState, regionId: string): ViewState {
  return {
    ...initialState(),
    draft: state.draft,
    regionId,
  };
}

export function setDraft(state: ViewState, draft: Partial<DraftParams>): ViewState {
  return { ...state, draft: { ...state.draft, ...draft } };
}

/** Inline validation; a non-null result means "do not call the server". */
export function validateDraft(draft: DraftParams): string | null {
  if (!Number.isInteger(draft.k_trucks) || draft.k_trucks < 1) {
    return 'truck count must be a positive integer';
  }
  if (!Number.isInteger(draft.seed)) {
    return 'seed must be an integer';
  }
  if (draft.solver !== 'two_approx' && draft.solver !== 'local_search') {
    return 'unknown solver';
  }
  return null;
}

export function stageAddSettlement(state: ViewState, draft: DraftSettlement): ViewState {
  return { ...state, edits: { ...state.edits, added: [...state.edits.added, draft] } };
}

export function stageRemoveSettlement(state: ViewState, id: number): ViewState {
  if (state.edits.removedIds.includes(id)) return state;
  return {
    ...state,
    edits: { ...state.edits, removedIds: [...state.edits.removedIds, id] },
  };
}

export function clearEdits(state: ViewState): ViewState {
  return { ...state, edits: { added: [], removedIds: [] } };
}

export function hasPendingEdits(state: ViewState): boolean {
  return state.edits.added.length > 0 || state.edits.removedIds.length > 0;
}

/** Record a plan returned by the server: it becomes active, the head of
 * history, and stale `ready` statuses in older entries are downgraded the
 * way the server does on supersession. */
export function recordPlan(state: ViewState, plan: StoredPlan): ViewState {
  const history = [
    plan,
    ...state.history
      .filter((p) => p.plan_id !== plan.plan_id)
      .map((p) =>
        p.plan_id === plan.supersedes ? { ...p, status: 'superseded' as const } : p,
      ),
  ];
  return {
    ...state,
    activePlanId: plan.plan_id,
    history,
    edits: { added: [], removedIds: [] },
    lastError: null,
  };
}

export function setError(state: ViewState, message: string): ViewState {
  return { ...state, lastError: message };
}

export function pickCompare(state: ViewState, slot: 0 | 1, planId: string | null): ViewState {
  const pair: [string | null, string | null] = [...state.comparePlanIds];
  pair[slot] = planId;
  return { ...state, comparePlanIds: pair };
}

export function planFromHistory(state: ViewState, planId: string | null): StoredPlan | null {
  if (!planId) return null;
  return state.history.find((p) => p.plan_id === planId) ?? null;
}

export function activePlan(state: ViewState): StoredPlan | null {
  return planFromHistory(state, state.activePlanId);
}

export function draftAsParams(draft: DraftParams): PlanParams {
  return { k_trucks: draft.k_trucks, seed: draft.seed, solver: draft.solver };
}
