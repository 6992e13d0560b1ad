// Payload shapes of the session service (snake_case mirrors the wire format).

export type Phase = "sampling" | "preferences" | "training" | "optimizing" | "done";

export interface SessionView {
  id: string;
  phase: Phase;
  profile_id: number;
  n_fronts: number;
  pair_limit: number | null;
  seed: number;
  pair_total: number;
  pairs_answered: number;
  preferences_count: number;
  cv_tau_estimate: number | null;
  model: { stats_ref: string; dim: number } | null;
  optimize: { budget: number; trials_done: number; incumbent_cost: number | null } | null;
  created_at: string;
  updated_at: string | null;
}

export interface Progress {
  answered: number;
  total: number;
}

export interface PairPresentation {
  pair_id: string;
  left_front: number[][];
  right_front: number[][];
  progress: Progress;
}

export interface DoneMarker {
  done: true;
  progress: Progress;
}

export type NextPair = PairPresentation | DoneMarker;

export function isDone(next: NextPair): next is DoneMarker {
  return (next as DoneMarker).done === true;
}

export type Choice = "left" | "right" | "skip";

export interface SubmitAck {
  ok: boolean;
  recorded: boolean;
  progress: Progress;
}

export interface TrainResponse {
  cv_tau_estimate: number | null;
  model_summary: { stats_ref: string; dim: number; n_preferences: number };
}

export interface StatusView {
  phase: Phase;
  trials_done: number;
  incumbent_cost: number | null;
}

export interface FrontPoint {
  id: string;
  losses: number[];
  meta: { epoch?: number } & Record<string, unknown>;
}

export interface ResultView {
  incumbent: {
    config: Record<string, number>;
    front: FrontPoint[];
    cost: number | null;
    trial_index: number;
  };
  trajectory: {
    trials: { cost: number | null; trial_index: number; incumbent: boolean }[];
    incumbent_index: number;
  };
}
