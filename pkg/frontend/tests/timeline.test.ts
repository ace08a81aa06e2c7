import { describe, expect, it } from "vitest";

import { Timeline, TimelinePoint } from "../src/timeline.js";

function point(t: number, rsrp1 = -68, rsrp2 = -80): TimelinePoint {
  return { t, rsrp: { "1": rsrp1, "2": rsrp2 }, snr: 30, serving: 1 };
}

describe("Timeline", () => {
  it("keeps samples in arrival order", () => {
    const timeline = new Timeline(60);
    timeline.push(point(0.1));
    timeline.push(point(0.2));
    timeline.push(point(0.3));
    expect(timeline.points.map((p) => p.t)).toEqual([0.1, 0.2, 0.3]);
  });

  it("replaces a repeated timestamp instead of duplicating it", () => {
    const timeline = new Timeline(60);
    timeline.push(point(0.1, -68));
    timeline.push(point(0.1, -60));
    expect(timeline.points).toHaveLength(1);
    expect(timeline.points[0].rsrp["1"]).toBe(-60);
  });

  it("trims samples older than the window", () => {
    const timeline = new Timeline(60);
    for (let t = 0; t <= 100; t += 1) timeline.push(point(t));
    expect(timeline.points[0].t).toBe(40);
    expect(timeline.points[timeline.points.length - 1].t).toBe(100);
  });

  it("trims markers along with samples", () => {
    const timeline = new Timeline(60);
    timeline.push(point(0));
    timeline.addMarker(5, "HO 1->2");
    timeline.addMarker(80, "HO 2->1");
    for (let t = 1; t <= 90; t += 1) timeline.push(point(t));
    expect(timeline.markers).toEqual([{ t: 80, label: "HO 2->1" }]);
  });

  it("starts fresh when time jumps backwards", () => {
    const timeline = new Timeline(60);
    timeline.push(point(10));
    timeline.addMarker(10, "HO 1->2");
    timeline.push(point(0.1));
    expect(timeline.points.map((p) => p.t)).toEqual([0.1]);
    expect(timeline.markers).toEqual([]);
  });

  it("pins the span to zero until there is a full window of data", () => {
    const timeline = new Timeline(60);
    expect(timeline.span).toEqual({ min: 0, max: 60 });
    timeline.push(point(12));
    expect(timeline.span).toEqual({ min: 0, max: 60 });
  });

  it("scrolls the span once past the window", () => {
    const timeline = new Timeline(60);
    timeline.push(point(75));
    expect(timeline.span).toEqual({ min: 15, max: 75 });
  });
});
