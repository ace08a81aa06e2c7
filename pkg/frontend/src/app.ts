import { ConnectionStatus, DashboardClient, WireSocket } from "./client.js";
import { drawTimeline } from "./chart.js";
import {
  describeEvent,
  EventMessage,
  eventTime,
  StateMessage,
  TelemetryMessage,
} from "./protocol.js";
import { Timeline } from "./timeline.js";

const GAIN_MIN_DB = -90;
const GAIN_MAX_DB = 0;

function must<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) throw new Error(`missing element #${id}`);
  return el as T;
}

function linearReadout(db: number): string {
  const amplitude = 10 ** (db / 20);
  const text = amplitude >= 0.01 ? amplitude.toFixed(3) : amplitude.toExponential(2);
  return `${db.toFixed(1)} dB (x${text})`;
}

class Dashboard {
  private readonly banner = must<HTMLDivElement>("banner");
  private readonly statusLine = must<HTMLSpanElement>("status-line");
  private readonly serving = must<HTMLSpanElement>("serving");
  private readonly clock = must<HTMLSpanElement>("clock");
  private readonly snr = must<HTMLSpanElement>("snr");
  private readonly sliderBox = must<HTMLDivElement>("sliders");
  private readonly eventLog = must<HTMLUListElement>("events");
  private readonly canvas = must<HTMLCanvasElement>("chart");

  private readonly timeline = new Timeline(60);
  private readonly client: DashboardClient;
  private readonly rows = new Map<
    string,
    { row: HTMLDivElement; input: HTMLInputElement; readout: HTMLSpanElement }
  >();
  private lastT = 0;
  private servingCell: number | null = null;

  constructor() {
    const scheme = location.protocol === "https:" ? "wss" : "ws";
    this.client = new DashboardClient(
      `${scheme}://${location.host}/ws`,
      {
        onStatus: (status) => this.renderConnection(status),
        onState: (state) => this.renderState(state),
        onTelemetry: (frame) => this.renderTelemetry(frame),
        onEvent: (event) => this.renderEvent(event),
        onGainSettled: (link) => this.renderSlider(link),
      },
      (url) => new WebSocket(url) as unknown as WireSocket,
    );
  }

  start(): void {
    this.client.connect();
    this.redraw();
  }

  // -- connection banner ---------------------------------------------------

  private renderConnection(status: ConnectionStatus): void {
    this.banner.hidden = status === "connected";
    this.banner.textContent =
      status === "connecting" ? "Connecting to control server" : "Connection lost, retrying";
  }

  // -- scenario state ------------------------------------------------------

  private renderState(state: StateMessage): void {
    this.statusLine.textContent =
      state.error !== undefined ? `${state.status}: ${state.error}` : state.status;
    const links = state.links ?? Object.keys(state.gains_db ?? {});
    this.rebuildSliders(links);
    if (typeof state.serving === "number") {
      this.servingCell = state.serving;
      this.serving.textContent = String(state.serving);
    }
  }

  private rebuildSliders(links: string[]): void {
    if (links.length === this.rows.size && links.every((l) => this.rows.has(l))) {
      links.forEach((l) => this.renderSlider(l));
      return;
    }
    this.rows.clear();
    this.sliderBox.replaceChildren();
    for (const link of links) {
      const row = document.createElement("div");
      row.className = "slider-row";
      const label = document.createElement("span");
      label.className = "slider-label";
      label.textContent = link;
      const input = document.createElement("input");
      input.type = "range";
      input.min = String(GAIN_MIN_DB);
      input.max = String(GAIN_MAX_DB);
      input.step = "0.1";
      const readout = document.createElement("span");
      readout.className = "slider-readout";
      input.addEventListener("input", () => {
        this.client.setGain(link, Number(input.value));
        this.renderSlider(link);
      });
      row.append(label, input, readout);
      this.sliderBox.append(row);
      this.rows.set(link, { row, input, readout });
      this.renderSlider(link);
    }
  }

  private renderSlider(link: string): void {
    const parts = this.rows.get(link);
    if (parts === undefined) return;
    const view = this.client.gainView(link);
    if (view === null) return;
    parts.input.value = String(view.value);
    parts.readout.textContent = linearReadout(view.value);
    parts.row.classList.toggle("pending", view.pending);
  }

  // -- telemetry -----------------------------------------------------------

  private renderTelemetry(frame: TelemetryMessage): void {
    this.lastT = frame.t_s;
    this.servingCell = frame.serving;
    this.timeline.push({
      t: frame.t_s,
      rsrp: frame.rsrp_db,
      snr: frame.snr_db,
      serving: frame.serving,
    });
    this.clock.textContent = `${frame.t_s.toFixed(2)} s`;
    this.snr.textContent = `${frame.snr_db.toFixed(1)} dB`;
    this.serving.textContent = String(frame.serving);
    this.statusLine.textContent = "running";
    for (const link of this.rows.keys()) this.renderSlider(link);
    this.redraw();
  }

  private renderEvent(event: EventMessage): void {
    const item = document.createElement("li");
    item.textContent = describeEvent(event);
    item.classList.toggle("handover", event.kind === "handover");
    this.eventLog.append(item);
    this.eventLog.scrollTop = this.eventLog.scrollHeight;
    if (event.kind === "handover") {
      const t = eventTime(event) ?? this.lastT;
      this.timeline.addMarker(t, `HO ${event.from}->${event.to}`);
    }
  }

  redraw(): void {
    const dpr = window.devicePixelRatio || 1;
    const width = this.canvas.clientWidth;
    const height = this.canvas.clientHeight;
    if (this.canvas.width !== width * dpr || this.canvas.height !== height * dpr) {
      this.canvas.width = width * dpr;
      this.canvas.height = height * dpr;
    }
    const ctx = this.canvas.getContext("2d");
    if (ctx === null) return;
    ctx.setTransform(dpr, 0, 0, dpr, 0, 0);
    drawTimeline(ctx, width, height, this.timeline, this.servingCell);
  }
}

window.addEventListener("load", () => {
  const dashboard = new Dashboard();
  dashboard.start();
  window.addEventListener("resize", () => dashboard.redraw());
});
