import { ApiError, SessionApi } from "./api.js";
import { frontPlot, incumbentChart } from "./scatter.js";
import {
  ViewState,
  applyNextPair,
  applyStatus,
  initialState,
  progressHint,
  SUGGESTED_MIN_PAIRS,
} from "./state.js";
import type { Choice, ResultView, SessionView } from "./types.js";

export interface AppOptions {
  root: HTMLElement;
  api: SessionApi;
  pollIntervalMs?: number;
  navigate?: (path: string) => void;
  keyboardTarget?: EventTarget;
}

/** Single-page client over the session service; all decisions live server-side. */
export class App {
  state: ViewState = initialState();
  private readonly root: HTMLElement;
  private readonly api: SessionApi;
  private readonly pollIntervalMs: number;
  private readonly navigate: (path: string) => void;
  private busy = false;
  private pendingChoice: Choice | null = null;
  private polling = false;
  private stopped = false;
  private result: ResultView | null = null;

  constructor(options: AppOptions) {
    this.root = options.root;
    this.api = options.api;
    this.pollIntervalMs = options.pollIntervalMs ?? 2000;
    this.navigate = options.navigate ?? (() => {});
    const target = options.keyboardTarget;
    if (target) {
      target.addEventListener("keydown", (event) => this.onKey(event as KeyboardEvent));
    }
  }

  stop(): void {
    this.stopped = true;
  }

  async start(sessionId: string | null): Promise<void> {
    if (sessionId) {
      await this.resume(sessionId);
    } else {
      this.renderSetup();
    }
  }

  private onKey(event: KeyboardEvent): void {
    if (!this.state.pair || this.busy) return;
    if (event.key === "ArrowLeft") void this.choose("left");
    else if (event.key === "ArrowRight") void this.choose("right");
    else if (event.key === "s") void this.choose("skip");
  }

  async createSession(params: { profile_id: number; n_fronts: number; pair_limit: number | null; seed: number }): Promise<void> {
    this.busy = true;
    this.renderBusy("sampling fronts on the server...");
    try {
      const view = await this.api.createSession(params);
      this.busy = false;
      this.adoptSession(view);
      this.navigate(`/session/${view.id}`);
      await this.fetchNextPair();
    } catch (error) {
      this.busy = false;
      this.renderSetup(this.describeError(error));
    }
  }

  async resume(sessionId: string): Promise<void> {
    try {
      const view = await this.api.getSession(sessionId);
      this.adoptSession(view);
      if (view.phase === "preferences") {
        await this.fetchNextPair();
      } else if (view.phase === "training") {
        this.render();
      } else if (view.phase === "optimizing") {
        this.render();
        void this.pollUntilDone();
      } else if (view.phase === "done") {
        await this.showResult();
      }
    } catch (error) {
      this.renderSetup(this.describeError(error));
    }
  }

  private adoptSession(view: SessionView): void {
    this.state = {
      ...initialState(),
      sessionId: view.id,
      phase: view.phase,
      answered: view.pairs_answered,
      total: view.pair_total,
      recorded: view.preferences_count,
      cvTauEstimate: view.cv_tau_estimate,
      trained: view.model !== null,
      queueDone: view.pairs_answered >= view.pair_total,
    };
    if (view.optimize) {
      this.state = applyStatus(this.state, {
        phase: view.phase,
        trials_done: view.optimize.trials_done,
        incumbent_cost: view.optimize.incumbent_cost,
      });
    }
  }

  async fetchNextPair(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const next = await this.api.nextPair(this.state.sessionId);
      this.state = applyNextPair(this.state, next);
      this.render();
    } catch (error) {
      if (error instanceof ApiError && error.status === 409) {
        // queue closed server-side (phase moved on); fall back to the panel
        this.state = { ...this.state, pair: null, queueDone: true };
        this.render();
        return;
      }
      this.renderError(this.describeError(error), () => void this.fetchNextPair());
    }
  }

  async choose(choice: Choice): Promise<void> {
    const pair = this.state.pair;
    if (!pair || this.busy || !this.state.sessionId) return;
    this.busy = true;
    this.pendingChoice = choice;
    this.render();
    try {
      const ack = await this.api.submitPreference(this.state.sessionId, pair.pair_id, choice);
      this.busy = false;
      this.pendingChoice = null;
      this.state = {
        ...this.state,
        answered: ack.progress.answered,
        total: ack.progress.total,
        recorded: this.state.recorded + (ack.recorded ? 1 : 0),
      };
      await this.fetchNextPair();
    } catch (error) {
      this.busy = false;
      if (error instanceof ApiError && error.status === 409) {
        this.pendingChoice = null;
        await this.fetchNextPair(); // stale pair: re-sync with the server cursor
        return;
      }
      this.renderError(this.describeError(error), () => {
        const retry = this.pendingChoice;
        this.pendingChoice = null;
        if (retry) void this.choose(retry);
      });
    }
  }

  async train(): Promise<void> {
    if (!this.state.sessionId || this.busy || this.state.recorded < 1) return;
    this.busy = true;
    this.render();
    try {
      const response = await this.api.train(this.state.sessionId);
      this.busy = false;
      this.state = {
        ...this.state,
        trained: true,
        phase: "training",
        pair: null,
        cvTauEstimate: response.cv_tau_estimate,
      };
      this.render();
    } catch (error) {
      this.busy = false;
      this.renderError(this.describeError(error), () => void this.train());
    }
  }

  async startOptimize(budget = 30): Promise<void> {
    if (!this.state.sessionId || this.busy || !this.state.trained) return;
    this.busy = true;
    this.render();
    try {
      await this.api.startOptimize(this.state.sessionId, budget);
      this.busy = false;
      this.state = { ...this.state, phase: "optimizing" };
      this.render();
      void this.pollUntilDone();
    } catch (error) {
      this.busy = false;
      this.renderError(this.describeError(error), () => void this.startOptimize(budget));
    }
  }

  async pollUntilDone(): Promise<void> {
    const sessionId = this.state.sessionId;
    if (this.polling || !sessionId) return;
    this.polling = true;
    while (!this.stopped) {
      try {
        const status = await this.api.getStatus(sessionId);
        this.state = applyStatus(this.state, status);
        if (status.phase === "done") {
          this.polling = false;
          await this.showResult();
          return;
        }
        this.render();
      } catch {
        // transient polling error: keep trying on the next tick
      }
      await new Promise((resolve) => setTimeout(resolve, this.pollIntervalMs));
    }
    this.polling = false;
  }

  async showResult(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      this.result = await this.api.getResult(this.state.sessionId);
      this.state = { ...this.state, phase: "done" };
      this.render();
    } catch (error) {
      this.renderError(this.describeError(error), () => void this.showResult());
    }
  }

  private describeError(error: unknown): string {
    if (error instanceof ApiError) return `${error.code}: ${error.message}`;
    return error instanceof Error ? `network error: ${error.message}` : "network error";
  }

  // -- rendering -----------------------------------------------------------

  private renderSetup(error?: string): void {
    this.root.innerHTML = `
      <section id="setup" class="card">
        <h1>interactive Pareto-front optimization</h1>
        <p>Sample candidate fronts, compare a few pairs, and let the learned
           preference drive the hyperparameter search.</p>
        ${error ? `<div id="error-banner" class="banner">${error}</div>` : ""}
        <form id="setup-form">
          <label>dataset profile <input id="profile-input" type="number" value="0" min="0"/></label>
          <label>sampled fronts <input id="fronts-input" type="number" value="40" min="2"/></label>
          <label>pair limit <input id="pairs-input" type="number" value="28" min="1"/></label>
          <label>seed <input id="seed-input" type="number" value="0"/></label>
          <button id="btn-create" type="submit">start session</button>
        </form>
      </section>`;
    const form = this.root.querySelector<HTMLFormElement>("#setup-form")!;
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const read = (id: string) => Number(this.root.querySelector<HTMLInputElement>(id)!.value);
      void this.createSession({
        profile_id: read("#profile-input"),
        n_fronts: read("#fronts-input"),
        pair_limit: read("#pairs-input"),
        seed: read("#seed-input"),
      });
    });
  }

  private renderBusy(message: string): void {
    this.root.innerHTML = `<section class="card"><p id="busy">${message}</p></section>`;
  }

  private renderError(message: string, retry: () => void): void {
    this.render();
    const banner = document.createElement("div");
    banner.id = "error-banner";
    banner.className = "banner";
    banner.innerHTML = `<span>${message}</span> <button id="btn-retry">retry</button>`;
    this.root.prepend(banner);
    banner.querySelector("#btn-retry")!.addEventListener("click", () => {
      banner.remove();
      retry();
    });
  }

  render(): void {
    const parts: string[] = [];
    parts.push(this.renderHeader());
    if (this.state.pair) {
      parts.push(this.renderPairView());
    }
    if (this.state.phase === "done") {
      parts.push(this.renderResultView());
    } else if (this.state.queueDone || this.state.recorded > 0 || this.state.trained || this.state.phase === "optimizing") {
      parts.push(this.renderPanel());
    }
    this.root.innerHTML = parts.join("");
    this.bind();
  }

  private renderHeader(): string {
    const id = this.state.sessionId ?? "";
    return `
      <header class="topbar">
        <span id="session-link">session <a href="/session/${id}">${id}</a></span>
        <span id="phase-badge" class="badge">${this.state.phase ?? ""}</span>
        <span id="progress-hint">${progressHint(this.state)}</span>
      </header>`;
  }

  private renderPairView(): string {
    const pair = this.state.pair!;
    const disabled = this.busy ? "disabled" : "";
    return `
      <section id="pair-view" class="card">
        <h2>which Pareto front do you prefer?</h2>
        <div class="pair-grid">
          <figure id="left-plot">${frontPlot(pair.left_front, { title: "left front" })}
            <figcaption>left (&#8592;)</figcaption></figure>
          <figure id="right-plot">${frontPlot(pair.right_front, { title: "right front" })}
            <figcaption>right (&#8594;)</figcaption></figure>
        </div>
        <div class="choices">
          <button id="btn-left" ${disabled}>prefer left</button>
          <button id="btn-skip" ${disabled}>no preference (s)</button>
          <button id="btn-right" ${disabled}>prefer right</button>
        </div>
      </section>`;
  }

  private renderPanel(): string {
    const trainDisabled = this.state.recorded < 1 || this.busy || this.state.phase === "optimizing" ? "disabled" : "";
    const optimizeDisabled = !this.state.trained || this.busy || this.state.phase === "optimizing" ? "disabled" : "";
    const estimate =
      this.state.cvTauEstimate === null
        ? "estimate unavailable (fewer than 10 preferences or folds too sparse)"
        : `cross-validated tau estimate: ${this.state.cvTauEstimate.toFixed(3)}`;
    const chart =
      this.state.phase === "optimizing" || this.state.incumbentSamples.length
        ? `<div id="incumbent-chart">${incumbentChart(this.state.incumbentSamples)}</div>`
        : "";
    const statusLine = this.state.status
      ? `<p id="optimize-status">trials ${this.state.status.trials_done} - incumbent cost ${this.state.status.incumbent_cost ?? "n/a"}</p>`
      : "";
    return `
      <section id="optimize-panel" class="card">
        <h2>train &amp; optimize</h2>
        <p id="cv-estimate" class="${this.state.trained ? "" : "muted"}">${this.state.trained ? estimate : "train a utility model from your answers"}</p>
        <div class="controls">
          <button id="btn-train" ${trainDisabled}>train utility</button>
          <button id="btn-optimize" ${optimizeDisabled}>optimize (30 trials)</button>
        </div>
        ${statusLine}
        ${chart}
      </section>`;
  }

  private renderResultView(): string {
    if (!this.result) return `<section id="final-front" class="card"><p>loading result...</p></section>`;
    const { incumbent } = this.result;
    const labels = incumbent.front.map(
      (p) => `epoch ${p.meta.epoch ?? p.id} - accuracy loss ${p.losses[0].toFixed(3)}, energy ${p.losses[1].toFixed(3)}`,
    );
    const rows = incumbent.front.map((p) => p.losses);
    const config = Object.entries(incumbent.config)
      .map(([key, value]) => `<tr><td>${key}</td><td>${typeof value === "number" ? +value.toPrecision(5) : value}</td></tr>`)
      .join("");
    return `
      <section id="final-front" class="card">
        <h2>winning Pareto front</h2>
        <figure id="result-plot">${frontPlot(rows, { title: "final front", labels })}</figure>
        <div id="incumbent-chart">${incumbentChart(this.state.incumbentSamples)}</div>
        <table id="config-table"><caption>incumbent configuration</caption>${config}</table>
      </section>`;
  }

  private bind(): void {
    this.root.querySelector("#btn-left")?.addEventListener("click", () => void this.choose("left"));
    this.root.querySelector("#btn-right")?.addEventListener("click", () => void this.choose("right"));
    this.root.querySelector("#btn-skip")?.addEventListener("click", () => void this.choose("skip"));
    this.root.querySelector("#btn-train")?.addEventListener("click", () => void this.train());
    this.root.querySelector("#btn-optimize")?.addEventListener("click", () => void this.startOptimize());
  }
}

export { SUGGESTED_MIN_PAIRS };
