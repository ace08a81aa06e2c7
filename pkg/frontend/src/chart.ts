import { Timeline } from "./timeline.js";

const PALETTE = ["#4fc3f7", "#ffb74d", "#81c784", "#e57373", "#ba68c8", "#fff176"];

const MARGIN = { left: 48, right: 12, top: 10, bottom: 22 };

export function cellColor(index: number): string {
  return PALETTE[index % PALETTE.length];
}

function niceRange(values: number[]): { lo: number; hi: number } {
  if (values.length === 0) return { lo: -120, hi: -40 };
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  lo = Math.floor(lo / 10) * 10 - 5;
  hi = Math.ceil(hi / 10) * 10 + 5;
  if (hi - lo < 20) {
    const mid = (hi + lo) / 2;
    lo = mid - 10;
    hi = mid + 10;
  }
  return { lo, hi };
}

/**
 * Render the RSRP timeline onto a canvas.  Samples are drawn as straight
 * segments between raw measurements; any smoothing would hide exactly
 * the transients this view exists to show.
 */
export function drawTimeline(
  ctx: CanvasRenderingContext2D,
  width: number,
  height: number,
  timeline: Timeline,
  serving: number | null,
): void {
  ctx.clearRect(0, 0, width, height);
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;
  const { min: t0, max: t1 } = timeline.span;
  const points = timeline.points;

  const cells = new Set<string>();
  const values: number[] = [];
  for (const p of points) {
    for (const [cell, rsrp] of Object.entries(p.rsrp)) {
      cells.add(cell);
      values.push(rsrp);
    }
  }
  const { lo, hi } = niceRange(values);

  const x = (t: number) => MARGIN.left + ((t - t0) / (t1 - t0)) * plotW;
  const y = (v: number) => MARGIN.top + ((hi - v) / (hi - lo)) * plotH;

  // Grid and axis labels.
  ctx.font = "11px monospace";
  ctx.strokeStyle = "#2a2f38";
  ctx.fillStyle = "#8a93a3";
  ctx.lineWidth = 1;
  const dbStep = hi - lo > 60 ? 20 : 10;
  for (let v = Math.ceil(lo / dbStep) * dbStep; v <= hi; v += dbStep) {
    ctx.beginPath();
    ctx.moveTo(MARGIN.left, y(v));
    ctx.lineTo(width - MARGIN.right, y(v));
    ctx.stroke();
    ctx.textAlign = "right";
    ctx.fillText(String(v), MARGIN.left - 6, y(v) + 4);
  }
  const tStep = 10;
  for (let t = Math.ceil(t0 / tStep) * tStep; t <= t1; t += tStep) {
    ctx.beginPath();
    ctx.moveTo(x(t), MARGIN.top);
    ctx.lineTo(x(t), height - MARGIN.bottom);
    ctx.stroke();
    ctx.textAlign = "center";
    ctx.fillText(`${t}s`, x(t), height - 6);
  }

  // Handover markers behind the traces.
  ctx.strokeStyle = "#e5c07b";
  ctx.fillStyle = "#e5c07b";
  ctx.setLineDash([4, 4]);
  for (const mark of timeline.markers) {
    if (mark.t < t0 || mark.t > t1) continue;
    ctx.beginPath();
    ctx.moveTo(x(mark.t), MARGIN.top);
    ctx.lineTo(x(mark.t), height - MARGIN.bottom);
    ctx.stroke();
    ctx.textAlign = "left";
    ctx.fillText(mark.label, x(mark.t) + 4, MARGIN.top + 10);
  }
  ctx.setLineDash([]);

  // One trace per cell, the serving cell drawn heavier.
  const ordered = [...cells].sort();
  ordered.forEach((cell, index) => {
    ctx.strokeStyle = cellColor(index);
    ctx.lineWidth = serving !== null && String(serving) === cell ? 2.5 : 1.2;
    ctx.beginPath();
    let started = false;
    for (const p of points) {
      const v = p.rsrp[cell];
      if (v === undefined) continue;
      if (started) {
        ctx.lineTo(x(p.t), y(v));
      } else {
        ctx.moveTo(x(p.t), y(v));
        started = true;
      }
    }
    ctx.stroke();
  });

  // Legend.
  ctx.textAlign = "left";
  ordered.forEach((cell, index) => {
    const lx = width - MARGIN.right - 70;
    const ly = MARGIN.top + 14 * index;
    ctx.fillStyle = cellColor(index);
    ctx.fillRect(lx, ly + 4, 10, 3);
    ctx.fillStyle = "#c8d0dc";
    ctx.fillText(`cell ${cell}`, lx + 16, ly + 9);
  });
}
