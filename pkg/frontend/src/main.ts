// Keyboard app bootstrap: create or resume a gateway session, then route
// every selection (dwell completion or click) through the gateway and
// re-render from its response.
//
// Query parameters: order (0-3), dwell_ms, mode (dwell|click),
// target (url-encoded task sentence), session (resume id), api (base url).

import { GatewayError, SessionClient } from "./api.js";
import { DwellTracker } from "./dwell.js";
import { Speaker } from "./speech.js";
import type { LayoutWire, MetricsSnapshot } from "./types.js";
import {
  createKeyboard,
  paintDwell,
  renderMetrics,
  renderOutput,
  renderTaskHud,
  updateKeyboard,
} from "./view.js";

interface AppState {
  sessionId: string;
  layout: LayoutWire;
  textEntered: string;
  lastFive: string;
  complete: boolean | null;
  metrics: MetricsSnapshot | null;
  target: string | null;
}

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el;
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(location.search);
  const order = Number(params.get("order") ?? "3");
  const mode = params.get("mode") === "click" ? "click" : "dwell";
  const target = params.get("target");
  const resumeId = params.get("session");
  const client = new SessionClient(params.get("api") ?? "");

  const banner = byId("banner");
  const showError = (message: string) => {
    banner.textContent = message;
    banner.classList.add("visible");
  };
  const clearError = () => banner.classList.remove("visible");

  const health = await client.health();
  const dwellMs = Number(params.get("dwell_ms") ?? String(health.default_dwell_ms));

  let state: AppState;
  if (resumeId) {
    const view = await client.getSession(resumeId);
    state = {
      sessionId: view.session_id,
      layout: view.layout,
      textEntered: view.text_entered,
      lastFive: view.last_five,
      complete: view.complete,
      metrics: await client.getMetrics(resumeId),
      target: view.config.target,
    };
  } else {
    const created = await client.createSession({
      order,
      dwell_ms: dwellMs,
      ...(target === null ? {} : { target }),
    });
    state = {
      sessionId: created.session_id,
      layout: created.layout,
      textEntered: "",
      lastFive: "",
      complete: created.config.target === null ? null : false,
      metrics: null,
      target: created.config.target,
    };
  }

  const tracker = new DwellTracker(dwellMs);
  const speaker = new Speaker();
  const startedAt = performance.now();
  let inFlight = false;

  const select = async (commandId: number) => {
    if (inFlight) return;
    inFlight = true;
    try {
      const response = await client.postCommand(
        state.sessionId,
        commandId,
        performance.now() - startedAt,
      );
      state.layout = response.layout;
      state.textEntered = response.text_entered;
      state.lastFive = response.last_five;
      state.complete = response.complete;
      state.metrics = response.metrics_snapshot;
      if (response.event.kind === "char" && response.event.char) {
        speaker.speak(response.event.char);
      }
      clearError();
      render();
    } catch (error) {
      tracker.reset();
      showError(error instanceof GatewayError ? error.message : String(error));
    } finally {
      inFlight = false;
    }
  };

  const buttons = createKeyboard(byId("keyboard"), {
    onPointerEnter: (id) => {
      if (mode === "dwell") tracker.pointerAt(id, performance.now());
    },
    onPointerLeave: () => {
      if (mode === "dwell") tracker.pointerAt(null, performance.now());
    },
    onClick: (id) => {
      if (mode === "click") void select(id);
    },
  });

  const render = () => {
    updateKeyboard(buttons, state.layout, state.lastFive);
    renderOutput(byId("output"), state.textEntered);
    renderTaskHud(byId("task"), state.target, state.textEntered, state.complete);
    renderMetrics(byId("metrics"), state.metrics);
    byId("mode").textContent =
      `${mode === "dwell" ? `dwell ${dwellMs} ms` : "click"} | order ${order}` +
      ` | session ${state.sessionId.slice(0, 8)}`;
  };

  byId("audio-toggle").addEventListener("click", () => {
    speaker.enabled = !speaker.enabled;
    byId("audio-toggle").textContent = speaker.enabled ? "audio on" : "audio off";
  });

  const frame = () => {
    if (mode === "dwell") {
      const now = performance.now();
      const selection = tracker.tick(now);
      if (selection) void select(selection.commandId);
      paintDwell(buttons, tracker.hovered, tracker.progress(now));
    }
    requestAnimationFrame(frame);
  };

  render();
  requestAnimationFrame(frame);
}

boot().catch((error) => {
  const banner = document.getElementById("banner");
  if (banner) {
    banner.textContent = `failed to start: ${error}`;
    banner.classList.add("visible");
  }
});
