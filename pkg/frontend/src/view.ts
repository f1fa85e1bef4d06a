// DOM rendering for the ten-command keyboard, the task HUD, and the live
// metrics strip. Buttons are created once and updated in place so a
// steady pointer keeps its hover across layout changes.

import type { LabelWire, LayoutWire, MetricsSnapshot } from "./types.js";

export const DARK_GREEN: readonly [number, number, number] = [0, 100, 0];
export const LIGHT_GREEN: readonly [number, number, number] = [144, 238, 144];

/** Border color interpolated from dark green to light green by progress. */
export function dwellBorderColor(progress: number): string {
  const p = Math.min(1, Math.max(0, progress));
  const channel = (i: number) =>
    Math.round(DARK_GREEN[i]! + (LIGHT_GREEN[i]! - DARK_GREEN[i]!) * p);
  return `rgb(${channel(0)}, ${channel(1)}, ${channel(2)})`;
}

const VISIBLE_SPACE = "␣";

export function labelText(label: LabelWire): string {
  switch (label.kind) {
    case "delete":
      return "DELETE";
    case "goback":
      return "GO BACK";
    default:
      return (label.chars ?? "").replaceAll(" ", VISIBLE_SPACE);
  }
}

export type CharMark = "correct" | "wrong" | "pending";

/** Per-character correctness of the typed text against the task target. */
export function taskMarks(target: string, typed: string): CharMark[] {
  return Array.from(target, (ch, i) => {
    if (i >= typed.length) return "pending";
    return typed[i] === ch ? "correct" : "wrong";
  });
}

export interface KeyboardHandlers {
  onPointerEnter(commandId: number): void;
  onPointerLeave(): void;
  onClick(commandId: number): void;
}

/** Create the fixed 2x5 command grid (ids 1-5 top row, 6-10 bottom). */
export function createKeyboard(root: HTMLElement, handlers: KeyboardHandlers): HTMLButtonElement[] {
  root.replaceChildren();
  const buttons: HTMLButtonElement[] = [];
  for (let id = 1; id <= 10; id++) {
    const button = root.ownerDocument.createElement("button");
    button.className = "command";
    button.dataset.commandId = String(id);
    const label = root.ownerDocument.createElement("div");
    label.className = "command-label";
    const strip = root.ownerDocument.createElement("div");
    strip.className = "last-five";
    button.append(label, strip);
    button.addEventListener("pointerenter", () => handlers.onPointerEnter(id));
    button.addEventListener("pointerleave", () => handlers.onPointerLeave());
    button.addEventListener("click", () => handlers.onClick(id));
    root.appendChild(button);
    buttons.push(button);
  }
  return buttons;
}

/** Update the grid in place for a new layout and last-five strip. */
export function updateKeyboard(
  buttons: HTMLButtonElement[],
  layout: LayoutWire,
  lastFive: string,
): void {
  layout.labels.forEach((label, i) => {
    const button = buttons[i]!;
    button.dataset.kind = label.kind;
    const text = button.querySelector<HTMLElement>(".command-label")!;
    text.textContent = labelText(label);
    const strip = button.querySelector<HTMLElement>(".last-five")!;
    strip.textContent = lastFive.replaceAll(" ", VISIBLE_SPACE);
  });
}

/** Paint dwell progress on the hovered button, resetting all the others. */
export function paintDwell(
  buttons: HTMLButtonElement[],
  hoveredId: number | null,
  progress: number,
): void {
  buttons.forEach((button, i) => {
    const active = hoveredId === i + 1;
    button.style.borderColor = dwellBorderColor(active ? progress : 0);
  });
}

export function renderOutput(el: HTMLElement, text: string): void {
  el.textContent = text.replaceAll(" ", VISIBLE_SPACE);
}

export function renderTaskHud(
  el: HTMLElement,
  target: string | null,
  typed: string,
  complete: boolean | null,
): void {
  el.replaceChildren();
  if (target === null) {
    el.textContent = "free typing";
    return;
  }
  const doc = el.ownerDocument;
  const marks = taskMarks(target, typed);
  marks.forEach((mark, i) => {
    const span = doc.createElement("span");
    span.className = `target-char ${mark}`;
    span.textContent = target[i] === " " ? VISIBLE_SPACE : target[i]!;
    el.appendChild(span);
  });
  const state = doc.createElement("span");
  state.className = complete ? "task-state done" : "task-state";
  state.textContent = complete ? " complete" : ` ${typed.length}/${target.length}`;
  el.appendChild(state);
}

export function renderMetrics(el: HTMLElement, snapshot: MetricsSnapshot | null): void {
  if (!snapshot || snapshot.empty) {
    el.textContent = "letters 0 | 0.0 letters/min | ITR com 0.0 | ITR letter 0.0";
    return;
  }
  el.textContent =
    `letters ${snapshot.letters} | ${snapshot.speed_lpm.toFixed(1)} letters/min` +
    ` | ITR com ${snapshot.itr_com_bpm.toFixed(1)} bits/min` +
    ` | ITR letter ${snapshot.itr_letter_bpm.toFixed(1)} bits/min`;
}
