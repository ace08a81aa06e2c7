/**
 * Outbound rate limiter for gain commands.
 *
 * A slider drag fires far faster than the server needs to hear about,
 * so sends are spaced at least `intervalMs` apart and anything offered
 * in between collapses to the newest value per link.  The first offer
 * after a quiet period goes out immediately.
 */
export class GainCoalescer {
  private pending = new Map<string, number>();
  private lastSend = -Infinity;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly send: (link: string, gainDb: number) => void,
    private readonly intervalMs: number = 100,
  ) {}

  offer(link: string, gainDb: number): void {
    this.pending.set(link, gainDb);
    this.flush();
  }

  private flush(): void {
    if (this.pending.size === 0) return;
    const wait = this.lastSend + this.intervalMs - Date.now();
    if (wait > 0) {
      if (this.timer === null) {
        this.timer = setTimeout(() => {
          this.timer = null;
          this.flush();
        }, wait);
      }
      return;
    }
    const [link, value] = this.pending.entries().next().value as [string, number];
    this.pending.delete(link);
    this.lastSend = Date.now();
    this.send(link, value);
    if (this.pending.size > 0 && this.timer === null) {
      this.timer = setTimeout(() => {
        this.timer = null;
        this.flush();
      }, this.intervalMs);
    }
  }

  /** Drop anything queued and cancel the trailing send. */
  dispose(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.pending.clear();
  }
}
