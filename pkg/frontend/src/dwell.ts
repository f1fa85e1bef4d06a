// Dwell selection state machine. Decisions are made from timestamps, so
// behavior is frame-rate independent: a hover fires when its continuous
// duration reaches the configured dwell time, and fires at most once until
// the pointer leaves. A refractory window after each selection stops the
// replacement layout from being selected by a pointer that never moved.

export interface DwellSelection {
  commandId: number;
}

export class DwellTracker {
  private hoveredId: number | null = null;
  private hoverStartedAt = 0;
  private fired = false;
  private refractoryUntil = -Infinity;

  constructor(
    readonly dwellMs: number,
    readonly refractoryMs: number = 400,
  ) {
    if (dwellMs <= 0) throw new Error(`dwell time must be positive, got ${dwellMs}`);
  }

  get hovered(): number | null {
    return this.hoveredId;
  }

  /** Report the command under the pointer (null when outside every button). */
  pointerAt(commandId: number | null, now: number): void {
    if (commandId === this.hoveredId) return; // continuous hover, keep state
    this.hoveredId = commandId;
    this.fired = false;
    // entering during the refractory window delays the dwell start to its end
    this.hoverStartedAt = Math.max(now, this.refractoryUntil);
  }

  /** Dwell progress 0..1 for the current hover; 0 after firing or outside. */
  progress(now: number): number {
    if (this.hoveredId === null || this.fired) return 0;
    const fraction = (now - this.hoverStartedAt) / this.dwellMs;
    return Math.min(1, Math.max(0, fraction));
  }

  /** Advance time; returns a selection the moment a hover completes. */
  tick(now: number): DwellSelection | null {
    if (this.hoveredId === null || this.fired) return null;
    if (now - this.hoverStartedAt < this.dwellMs) return null;
    this.fired = true;
    this.refractoryUntil = now + this.refractoryMs;
    return { commandId: this.hoveredId };
  }

  /** Forget the current hover (pointer left the keyboard or an error reset). */
  reset(): void {
    this.hoveredId = null;
    this.fired = false;
  }
}
