// @vitest-environment happy-dom
import { beforeEach, describe, expect, it } from "vitest";

import { App } from "../src/app.js";
import { SessionApi } from "../src/api.js";
import { sessionIdFromLocation } from "../src/state.js";
import { FakeServer } from "./fake-server.js";

function makeApp(server: FakeServer, pollIntervalMs = 1) {
  const root = document.createElement("main");
  document.body.innerHTML = "";
  document.body.appendChild(root);
  const app = new App({
    root,
    api: new SessionApi("http://fake", server.fetch),
    pollIntervalMs,
    navigate: (path) => history.pushState({}, "", path),
    keyboardTarget: window,
  });
  return { root, app };
}

function click(root: HTMLElement, selector: string) {
  const el = root.querySelector<HTMLButtonElement>(selector);
  expect(el, `missing element ${selector}`).toBeTruthy();
  el!.click();
}

async function settle() {
  for (let i = 0; i < 6; i++) await new Promise((resolve) => setTimeout(resolve, 0));
}

async function createDefaultSession(server: FakeServer, pairLimit = 6) {
  const { root, app } = makeApp(server);
  await app.start(null);
  root.querySelector<HTMLInputElement>("#pairs-input")!.value = String(pairLimit);
  root.querySelector<HTMLFormElement>("#setup-form")!.dispatchEvent(new Event("submit"));
  await settle();
  return { root, app };
}

describe("pair comparison flow", () => {
  let server: FakeServer;

  beforeEach(() => {
    server = new FakeServer();
  });

  it("renders two blinded plots with shared axes after session creation", async () => {
    const { root } = await createDefaultSession(server);
    expect(root.querySelector("#pair-view")).toBeTruthy();
    const left = root.querySelector("#left-plot svg")!.getAttribute("viewBox");
    const right = root.querySelector("#right-plot svg")!.getAttribute("viewBox");
    expect(left).toEqual(right);
    expect(root.textContent).toContain("accuracy loss");
    expect(root.textContent).toContain("normalized energy");
    expect(root.querySelector("#progress-hint")!.textContent).toContain("0/6");
  });

  it("records a left click as the left-assigned front winning", async () => {
    const { root } = await createDefaultSession(server);
    click(root, "#btn-left");
    await settle();
    const session = [...server.sessions.values()][0];
    expect(session.preferences).toEqual([{ winner: 0, loser: 1 }]);
    expect(root.querySelector("#progress-hint")!.textContent).toContain("1/6");
  });

  it("skip advances without recording a preference", async () => {
    const { root } = await createDefaultSession(server);
    click(root, "#btn-skip");
    await settle();
    const session = [...server.sessions.values()][0];
    expect(session.preferences).toHaveLength(0);
    expect(session.cursor).toBe(1);
    expect(root.querySelector("#progress-hint")!.textContent).toContain("1/6");
  });

  it("keyboard arrows and s mirror the buttons", async () => {
    const { app } = await createDefaultSession(server);
    window.dispatchEvent(new KeyboardEvent("keydown", { key: "ArrowRight" }));
    await settle();
    window.dispatchEvent(new KeyboardEvent("keydown", { key: "s" }));
    await settle();
    const session = [...server.sessions.values()][0];
    expect(session.preferences).toEqual([{ winner: 1, loser: 0 }]);
    expect(session.cursor).toBe(2);
    expect(app.state.answered).toBe(2);
  });

  it("a stale-pair conflict refetches the current pair instead of erroring", async () => {
    const { root, app } = await createDefaultSession(server);
    const session = [...server.sessions.values()][0];
    session.cursor = 1; // another client answered behind our back
    click(root, "#btn-left");
    await settle();
    expect(app.state.pair!.pair_id).toBe("p0001");
    expect(root.querySelector("#error-banner")).toBeFalsy();
  });

  it("network failure shows a retry affordance and never double-submits", async () => {
    const { root } = await createDefaultSession(server);
    server.failNextSubmit = true;
    click(root, "#btn-left");
    await settle();
    expect(root.querySelector("#error-banner")).toBeTruthy();
    const session = [...server.sessions.values()][0];
    expect(session.cursor).toBe(0);
    click(root, "#btn-retry");
    await settle();
    expect(session.cursor).toBe(1);
    expect(session.preferences).toHaveLength(1);
  });

  it("train stays disabled until a preference is recorded", async () => {
    const { root } = await createDefaultSession(server);
    click(root, "#btn-skip");
    await settle();
    const trainButton = root.querySelector<HTMLButtonElement>("#btn-train");
    expect(trainButton).toBeFalsy(); // panel not even offered with zero recorded
    click(root, "#btn-left");
    await settle();
    expect(root.querySelector<HTMLButtonElement>("#btn-train")!.disabled).toBe(false);
  });
});

describe("full interactive run", () => {
  it("reaches the final-front view through simulated clicks", async () => {
    const server = new FakeServer();
    const { root, app } = await createDefaultSession(server);

    for (let i = 0; i < 6; i++) {
      click(root, i % 2 ? "#btn-right" : "#btn-left");
      await settle();
    }
    expect(app.state.queueDone).toBe(true);
    expect(root.querySelector("#pair-view")).toBeFalsy();

    click(root, "#btn-train");
    await settle();
    expect(root.querySelector("#cv-estimate")!.textContent).toContain("estimate unavailable");
    expect(root.querySelector<HTMLButtonElement>("#btn-optimize")!.disabled).toBe(false);

    click(root, "#btn-optimize");
    await settle();
    await new Promise((resolve) => setTimeout(resolve, 40));
    await settle();

    expect(app.state.phase).toBe("done");
    expect(root.querySelector("#final-front")).toBeTruthy();
    expect(root.querySelector("#result-plot svg")).toBeTruthy();
    expect(root.innerHTML).toContain("<title>epoch 5");
    expect(root.querySelector("#config-table")!.textContent).toContain("learning_rate");

    const costs = app.state.incumbentSamples.map((s) => s.cost);
    for (let i = 1; i < costs.length; i++) expect(costs[i]).toBeLessThanOrEqual(costs[i - 1]);
  });

  it("navigates to /session/{id} after creation", async () => {
    const server = new FakeServer();
    await createDefaultSession(server);
    expect(location.pathname).toMatch(/^\/session\/fake0$/);
  });
});

describe("resume by URL", () => {
  it("restores a mid-labeling session from its id", async () => {
    const server = new FakeServer();
    const first = await createDefaultSession(server);
    click(first.root, "#btn-left");
    await settle();
    click(first.root, "#btn-right");
    await settle();
    first.app.stop();

    // fresh page load at /session/{id}
    history.pushState({}, "", "/session/fake0");
    const id = sessionIdFromLocation(location.pathname, location.hash);
    expect(id).toBe("fake0");
    const second = makeApp(server);
    await second.app.start(id);
    await settle();
    expect(second.app.state.answered).toBe(2);
    expect(second.app.state.recorded).toBe(2);
    expect(second.root.querySelector("#pair-view")).toBeTruthy();
    expect(second.app.state.pair!.pair_id).toBe("p0002");
  });

  it("resumes a finished session straight into the result view", async () => {
    const server = new FakeServer();
    const first = await createDefaultSession(server);
    for (let i = 0; i < 6; i++) {
      click(first.root, "#btn-left");
      await settle();
    }
    click(first.root, "#btn-train");
    await settle();
    click(first.root, "#btn-optimize");
    await settle();
    await new Promise((resolve) => setTimeout(resolve, 40));
    first.app.stop();

    const second = makeApp(server);
    await second.app.start("fake0");
    await settle();
    expect(second.app.state.phase).toBe("done");
    expect(second.root.querySelector("#final-front")).toBeTruthy();
  });

  it("parses both path and hash session URLs", () => {
    expect(sessionIdFromLocation("/session/abc123", "")).toBe("abc123");
    expect(sessionIdFromLocation("/", "#/session/xyz")).toBe("xyz");
    expect(sessionIdFromLocation("/", "")).toBeNull();
  });
});
