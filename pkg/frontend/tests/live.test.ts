/**
 * End-to-end check against a real control server.
 *
 * A python process serves a short two-cell scenario in which the
 * neighbor ramps up and wins a handover around t=2.5s.  The dashboard
 * client connects over a real socket and must see the snapshot, a gain
 * round trip, the signalling, the switch, and the serving change.
 */

import { spawn, ChildProcess } from "node:child_process";
import { mkdtemp, rm, writeFile } from "node:fs/promises";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";
import WebSocket from "ws";

import { DashboardClient, WireSocket } from "../src/client.js";
import { EventMessage, StateMessage, TelemetryMessage } from "../src/protocol.js";

const PORT = 20000 + Math.floor(Math.random() * 20000);
const BASE = `http://127.0.0.1:${PORT}`;

// Serving cell 1 sits at RSRP -68.  Cell 2 ramps from -80 dB to -40 dB
// gain between t=2.2s and t=2.6s, crossing the 3 dB hysteresis margin
// at t=2.55s.  The late ramp leaves time to connect and steer first.
const SCENARIO = {
  cells: [1, 2],
  n_rb: 6,
  a3: { hysteresis_db: 3.0, time_to_trigger_s: 0.0 },
  meas_period_s: 0.05,
  drive: {
    kind: "gains",
    trajectories: [
      { link_id: "enb1_dl", points: [[0.0, -48.0]] },
      { link_id: "enb2_dl", points: [[2.2, -80.0], [2.6, -40.0]] },
    ],
  },
  duration_s: 15.0,
  seed: 0,
};

let workDir: string;
let server: ChildProcess;
let serverLog = "";

async function waitFor<T>(
  get: () => T | null | undefined | false,
  what: string,
  timeoutMs = 15000,
): Promise<T> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    const value = get();
    if (value) return value;
    if (Date.now() > deadline) {
      throw new Error(`timed out waiting for ${what}\nserver output:\n${serverLog}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 25));
  }
}

beforeAll(async () => {
  workDir = await mkdtemp(join(tmpdir(), "softcell-ui-"));
  const scenarioPath = join(workDir, "scenario.json");
  await writeFile(scenarioPath, JSON.stringify(SCENARIO));
  server = spawn(
    "python3",
    [
      "-m",
      "softcell.control.cli",
      "serve",
      "--port",
      String(PORT),
      "--scenario",
      scenarioPath,
    ],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  server.stdout?.on("data", (chunk) => (serverLog += chunk));
  server.stderr?.on("data", (chunk) => (serverLog += chunk));

  const deadline = Date.now() + 20000;
  for (;;) {
    try {
      const resp = await fetch(`${BASE}/state`);
      if (resp.ok) break;
    } catch {
      // Still booting.
    }
    if (Date.now() > deadline) {
      throw new Error(`control server never came up\n${serverLog}`);
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
});

afterAll(async () => {
  if (server !== undefined && server.exitCode === null) {
    server.kill("SIGTERM");
    await new Promise<void>((resolve) => {
      const hardStop = setTimeout(() => {
        server.kill("SIGKILL");
        resolve();
      }, 5000);
      server.once("exit", () => {
        clearTimeout(hardStop);
        resolve();
      });
    });
  }
  if (workDir !== undefined) {
    await rm(workDir, { recursive: true, force: true });
  }
});

describe("dashboard client against a live server", () => {
  it("sees the snapshot, steers a gain, and follows the handover", async () => {
    const state = (await (await fetch(`${BASE}/state`)).json()) as StateMessage;
    expect(state.status).toBe("running");
    expect(state.links).toContain("enb1_dl");

    const states: StateMessage[] = [];
    const frames: TelemetryMessage[] = [];
    const events: EventMessage[] = [];
    const settled: Array<[string, number, boolean]> = [];
    const client = new DashboardClient(
      `ws://127.0.0.1:${PORT}/ws`,
      {
        onState: (s) => states.push(s),
        onTelemetry: (f) => frames.push(f),
        onEvent: (e) => events.push(e),
        onGainSettled: (link, value, ok) => settled.push([link, value, ok]),
      },
      (url) => new WebSocket(url) as unknown as WireSocket,
    );
    client.connect();
    try {
      const snapshot = await waitFor(() => states[0], "the connect snapshot");
      expect(snapshot.status).toBe("running");
      expect(snapshot.gains_db?.enb1_ul).toBe(0.0);
      await waitFor(() => frames.length > 0, "first telemetry");
      expect(frames[0].serving).toBe(1);
      expect(frames[0].rsrp_db["1"]).toBeCloseTo(-68.0, 5);

      // Round trip on an uplink gain; it does not disturb the handover.
      client.setGain("enb1_ul", -30);
      expect(client.gainView("enb1_ul")).toEqual({ value: -30, pending: true });
      await waitFor(
        () => settled.some(([link, value, ok]) => link === "enb1_ul" && value === -30 && ok),
        "the gain ack",
      );
      await waitFor(
        () => frames.some((f) => f.gains_db.enb1_ul === -30),
        "telemetry reflecting the gain",
      );

      const handover = await waitFor(
        () => events.find((e) => e.kind === "handover"),
        "the handover event",
      );
      expect(handover.from).toBe(1);
      expect(handover.to).toBe(2);
      expect(handover.t_s).toBeGreaterThan(2.4);
      expect(handover.t_s).toBeLessThan(3.5);

      // The S1 choreography precedes the switch, in order, on one socket.
      const kinds = events.map((e) => e.kind);
      expect(kinds.indexOf("MeasurementReport")).toBeGreaterThanOrEqual(0);
      expect(kinds.indexOf("MeasurementReport")).toBeLessThan(kinds.indexOf("handover"));

      await waitFor(() => frames.some((f) => f.serving === 2), "serving to flip");
    } finally {
      client.close();
    }
  });
});
