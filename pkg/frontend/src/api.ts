import type {
  Choice,
  NextPair,
  ResultView,
  SessionView,
  StatusView,
  SubmitAck,
  TrainResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Thin typed client over the session-service routes. */
export class SessionApi {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: { "content-type": "application/json" } };
    if (body !== undefined) init.body = JSON.stringify(body);
    const response = await this.fetchImpl(this.baseUrl + path, init);
    const payload = await response.json().catch(() => null);
    if (!response.ok) {
      const error = (payload as { error?: { code?: string; message?: string } } | null)?.error;
      throw new ApiError(response.status, error?.code ?? "unknown", error?.message ?? "request failed");
    }
    return payload as T;
  }

  createSession(body: {
    profile_id: number;
    n_fronts?: number;
    pair_limit?: number | null;
    seed?: number;
  }): Promise<SessionView> {
    return this.request("POST", "/sessions", body);
  }

  getSession(id: string): Promise<SessionView> {
    return this.request("GET", `/sessions/${id}`);
  }

  nextPair(id: string): Promise<NextPair> {
    return this.request("GET", `/sessions/${id}/pairs/next`);
  }

  submitPreference(id: string, pairId: string, choice: Choice): Promise<SubmitAck> {
    return this.request("POST", `/sessions/${id}/preferences`, { pair_id: pairId, choice });
  }

  train(id: string, trainConfig?: Record<string, number>): Promise<TrainResponse> {
    return this.request("POST", `/sessions/${id}/train`, trainConfig ? { train_config: trainConfig } : {});
  }

  startOptimize(id: string, budget = 30): Promise<{ accepted: boolean; budget: number }> {
    return this.request("POST", `/sessions/${id}/optimize`, { budget });
  }

  getStatus(id: string): Promise<StatusView> {
    return this.request("GET", `/sessions/${id}/status`);
  }

  getResult(id: string): Promise<ResultView> {
    return this.request("GET", `/sessions/${id}/result`);
  }
}
