// Wire types for the session gateway JSON API.

export type LabelKind = "group" | "char" | "delete" | "goback";

export interface LabelWire {
  kind: LabelKind;
  chars?: string;
}

export interface LayoutWire {
  level: 1 | 2;
  labels: LabelWire[];
}

export interface SessionConfig {
  order: number;
  dwell_ms: number;
  target: string | null;
}

export interface MetricsSnapshot {
  empty: boolean;
  letters: number;
  commands: number;
  duration_s: number;
  speed_lpm: number;
  itr_com_bpm: number;
  itr_letter_bpm: number;
  deletion_s_per_letter: number | null;
}

export interface EventWire {
  t_ms: number;
  kind: "descend" | "char" | "delete" | "goback" | "noop";
  cmd: number;
  level: number;
  text_len: number;
  char?: string;
}

export interface CreateSessionResponse {
  session_id: string;
  layout: LayoutWire;
  config: SessionConfig;
}

export interface SessionView {
  session_id: string;
  level: number;
  layout: LayoutWire;
  text_entered: string;
  last_five: string;
  complete: boolean | null;
  config: SessionConfig;
}

export interface CommandResponse {
  event: EventWire;
  level: number;
  layout: LayoutWire;
  text_entered: string;
  last_five: string;
  complete: boolean | null;
  metrics_snapshot: MetricsSnapshot;
}

export interface EndSessionResponse {
  session_id: string;
  transcript: EventWire[];
  metrics: MetricsSnapshot;
  text_entered: string;
}

export interface HealthResponse {
  status: string;
  orders: number[];
  default_dwell_ms: number;
}
