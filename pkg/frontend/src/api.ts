// HTTP client for the session gateway. The keyboard never mutates typing
// state locally; every transition round-trips through these calls.

import type {
  CommandResponse,
  CreateSessionResponse,
  EndSessionResponse,
  HealthResponse,
  MetricsSnapshot,
  SessionView,
} from "./types.js";

export class GatewayError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    let code = "http_error";
    let message = `${response.status} ${response.statusText}`;
    try {
      const body = await response.json();
      if (body && typeof body.error === "string") {
        code = body.error;
        message = body.message ?? message;
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new GatewayError(response.status, code, message);
  }
  return response.json() as Promise<T>;
}

export interface CreateSessionRequest {
  order: number;
  target?: string;
  dwell_ms?: number;
}

export class SessionClient {
  constructor(readonly baseUrl: string = "") {}

  health(): Promise<HealthResponse> {
    return request(`${this.baseUrl}/healthz`);
  }

  createSession(body: CreateSessionRequest): Promise<CreateSessionResponse> {
    return request(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getSession(sessionId: string): Promise<SessionView> {
    return request(`${this.baseUrl}/sessions/${sessionId}`);
  }

  postCommand(sessionId: string, commandId: number, tMs: number): Promise<CommandResponse> {
    return request(`${this.baseUrl}/sessions/${sessionId}/command`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ command_id: commandId, t_ms: Math.round(tMs) }),
    });
  }

  getMetrics(sessionId: string): Promise<MetricsSnapshot> {
    return request(`${this.baseUrl}/sessions/${sessionId}/metrics`);
  }

  endSession(sessionId: string): Promise<EndSessionResponse> {
    return request(`${this.baseUrl}/sessions/${sessionId}`, { method: "DELETE" });
  }
}
