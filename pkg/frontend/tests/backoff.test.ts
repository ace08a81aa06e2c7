import { describe, expect, it } from "vitest";

import { Backoff } from "../src/backoff.js";

describe("Backoff", () => {
  it("doubles from the base up to the cap", () => {
    const backoff = new Backoff(500, 8000);
    const delays = [0, 0, 0, 0, 0, 0].map(() => backoff.next());
    expect(delays).toEqual([500, 1000, 2000, 4000, 8000, 8000]);
  });

  it("starts over after a reset", () => {
    const backoff = new Backoff(500, 8000);
    backoff.next();
    backoff.next();
    backoff.reset();
    expect(backoff.next()).toBe(500);
  });
});
