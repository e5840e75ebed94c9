import { describe, expect, it } from 'vitest';

import {
  activePlan,
  clearEdits,
  hasPendingEdits,
  initialState,
  pickCompare,
  planFromHistory,
  recordPlan,
  selectRegion,
  setDraft,
  stageAddSettlement,
  stageRemoveSettlement,
  validateDraft,
} from '../src/state.js';
import { makeStoredPlan } from './fixtures.js';

describe('view state transitions', () => {
  it('starts with no region, defaults, empty history', () => {
    const state = initialState();
    expect(state.regionId).toBeNull();
    expect(state.history).toEqual([]);
    expect(state.draft.k_trucks).toBe(2);
  });

  it('selecting a region resets plan state but keeps the draft', () => {
    let state = setDraft(initialState(), { k_trucks: 5, seed: 99 });
    state = recordPlan({ ...state, regionId: 'old' }, makeStoredPlan(2));
    state = selectRegion(state, 'region-9');
    expect(state.regionId).toBe('region-9');
    expect(state.history).toEqual([]);
    expect(state.activePlanId).toBeNull();
    expect(state.draft.k_trucks).toBe(5);
  });

  it('staged edits accumulate without duplicates and clear atomically', () => {
    let state = initialState();
    state = stageAddSettlement(state, { name: 'N', lat: 1, lon: 2, population: 10 });
    state = stageRemoveSettlement(state, 4);
    state = stageRemoveSettlement(state, 4);
    expect(state.edits.added).toHaveLength(1);
    expect(state.edits.removedIds).toEqual([4]);
    expect(hasPendingEdits(state)).toBe(true);
    state = clearEdits(state);
    expect(hasPendingEdits(state)).toBe(false);
  });

  it('recording a plan grows history by one and activates it', () => {
    let state = { ...initialState(), regionId: 'region-1' };
    const first = makeStoredPlan(2);
    state = recordPlan(state, first);
    expect(state.history).toHaveLength(1);
    expect(state.activePlanId).toBe(first.plan_id);

    const second = makeStoredPlan(3, { supersedes: first.plan_id });
    state = recordPlan(state, second);
    expect(state.history).toHaveLength(2);
    expect(state.history[0].plan_id).toBe(second.plan_id);
    expect(activePlan(state)?.plan_id).toBe(second.plan_id);
  });

  it('history mirrors the supersession chain', () => {
    let state = { ...initialState(), regionId: 'region-1' };
    const first = makeStoredPlan(2);
    state = recordPlan(state, first);
    const second = makeStoredPlan(3, { supersedes: first.plan_id });
    state = recordPlan(state, second);
    expect(planFromHistory(state, first.plan_id)?.status).toBe('superseded');
    expect(planFromHistory(state, second.plan_id)?.status).toBe('ready');
  });

  it('recording a plan clears staged edits (they were applied)', () => {
    let state = { ...initialState(), regionId: 'region-1' };
    state = stageRemoveSettlement(state, 2);
    state = recordPlan(state, makeStoredPlan(2));
    expect(hasPendingEdits(state)).toBe(false);
  });

  it('compare slots hold independent picks', () => {
    let state = initialState();
    state = pickCompare(state, 0, 'a');
    state = pickCompare(state, 1, 'b');
    expect(state.comparePlanIds).toEqual(['a', 'b']);
    state = pickCompare(state, 0, null);
    expect(state.comparePlanIds).toEqual([null, 'b']);
  });
});

describe('draft validation', () => {
  it('accepts a sane draft', () => {
    expect(validateDraft({ k_trucks: 3, seed: 0, solver: 'local_search' })).toBeNull();
  });

  it('rejects k = 0 and negative k', () => {
    expect(validateDraft({ k_trucks: 0, seed: 0, solver: 'local_search' })).toMatch(/truck count/);
    expect(validateDraft({ k_trucks: -2, seed: 0, solver: 'local_search' })).toMatch(/truck count/);
  });

  it('rejects fractional k and seed', () => {
    expect(validateDraft({ k_trucks: 1.5, seed: 0, solver: 'two_approx' })).toMatch(/truck count/);
    expect(validateDraft({ k_trucks: 1, seed: 0.5, solver: 'two_approx' })).toMatch(/seed/);
  });
});
