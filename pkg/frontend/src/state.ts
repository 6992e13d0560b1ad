import type { NextPair, PairPresentation, Phase, StatusView } from "./types.js";
import { isDone } from "./types.js";

export const SUGGESTED_MIN_PAIRS = 28;

/** Client-side mirror of the server session; mutated only from responses. */
export interface ViewState {
  sessionId: string | null;
  phase: Phase | null;
  pair: PairPresentation | null;
  answered: number;
  total: number;
  recorded: number;
  queueDone: boolean;
  cvTauEstimate: number | null;
  trained: boolean;
  status: StatusView | null;
  incumbentSamples: { trial: number; cost: number }[];
}

export function initialState(): ViewState {
  return {
    sessionId: null,
    phase: null,
    pair: null,
    answered: 0,
    total: 0,
    recorded: 0,
    queueDone: false,
    cvTauEstimate: null,
    trained: false,
    status: null,
    incumbentSamples: [],
  };
}

export function applyNextPair(state: ViewState, next: NextPair): ViewState {
  if (isDone(next)) {
    return { ...state, pair: null, queueDone: true, answered: next.progress.answered, total: next.progress.total };
  }
  return { ...state, pair: next, queueDone: false, answered: next.progress.answered, total: next.progress.total };
}

export function applyStatus(state: ViewState, status: StatusView): ViewState {
  const samples = state.incumbentSamples.slice();
  const last = samples[samples.length - 1];
  if (status.incumbent_cost !== null && (!last || last.trial !== status.trials_done || last.cost !== status.incumbent_cost)) {
    samples.push({ trial: status.trials_done, cost: status.incumbent_cost });
  }
  return { ...state, phase: status.phase, status, incumbentSamples: samples };
}

export function progressHint(state: ViewState): string {
  const base = `${state.answered}/${state.total} pairs answered`;
  if (state.recorded < SUGGESTED_MIN_PAIRS) {
    return `${base} - ${SUGGESTED_MIN_PAIRS} suggested before training`;
  }
  return base;
}

/** Parse /session/{id} (or the #/session/{id} fallback) out of a location. */
export function sessionIdFromLocation(pathname: string, hash: string): string | null {
  const fromPath = pathname.match(/^\/session\/([A-Za-z0-9_-]+)\/?$/);
  if (fromPath) return fromPath[1];
  const fromHash = hash.match(/^#\/session\/([A-Za-z0-9_-]+)\/?$/);
  if (fromHash) return fromHash[1];
  return null;
}
