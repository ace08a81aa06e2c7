/** Capped exponential delay schedule for socket reconnects. */
export class Backoff {
  private attempt = 0;

  constructor(
    readonly baseMs: number = 500,
    readonly capMs: number = 8000,
  ) {}

  /** Delay to wait before the next attempt; doubles until the cap. */
  next(): number {
    const delay = Math.min(this.baseMs * 2 ** this.attempt, this.capMs);
    this.attempt += 1;
    return delay;
  }

  /** Call after a successful connect so the next outage starts small. */
  reset(): void {
    this.attempt = 0;
  }
}
