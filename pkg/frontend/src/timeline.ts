/** One plotted telemetry sample. */
export interface TimelinePoint {
  t: number;
  rsrp: Record<string, number>;
  snr: number;
  serving: number;
}

/** A vertical annotation, e.g. the instant a handover completed. */
export interface TimelineMarker {
  t: number;
  label: string;
}

/**
 * Rolling window of telemetry samples plus event markers.
 *
 * Samples are kept in time order and trimmed to the last `windowS`
 * seconds.  Telemetry repeats the latest measurement between ticks, so
 * a sample with the same timestamp as the last replaces it.  Time
 * jumping backwards means a new run started and clears the window.
 */
export class Timeline {
  private samples: TimelinePoint[] = [];
  private marks: TimelineMarker[] = [];

  constructor(readonly windowS: number = 60) {}

  push(point: TimelinePoint): void {
    const last = this.samples[this.samples.length - 1];
    if (last !== undefined && point.t < last.t) {
      this.clear();
    } else if (last !== undefined && point.t === last.t) {
      this.samples[this.samples.length - 1] = point;
      return;
    }
    this.samples.push(point);
    this.trim(point.t);
  }

  addMarker(t: number, label: string): void {
    this.marks.push({ t, label });
  }

  clear(): void {
    this.samples = [];
    this.marks = [];
  }

  get points(): readonly TimelinePoint[] {
    return this.samples;
  }

  get markers(): readonly TimelineMarker[] {
    return this.marks;
  }

  /**
   * Plot range on the time axis: always `windowS` wide, pinned to zero
   * until enough data has accumulated to scroll.
   */
  get span(): { min: number; max: number } {
    const last = this.samples[this.samples.length - 1];
    const latest = last === undefined ? 0 : last.t;
    const max = Math.max(latest, this.windowS);
    return { min: max - this.windowS, max };
  }

  private trim(latest: number): void {
    const cutoff = latest - this.windowS;
    while (this.samples.length > 0 && this.samples[0].t < cutoff) {
      this.samples.shift();
    }
    while (this.marks.length > 0 && this.marks[0].t < cutoff) {
      this.marks.shift();
    }
  }
}
