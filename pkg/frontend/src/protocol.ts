/**
 * Wire shapes spoken by the control server.
 *
 * One WebSocket carries everything: a state snapshot on connect, then
 * telemetry frames and events as they happen, plus ack or error replies
 * to commands we send.  Replies arrive in command order, so a client can
 * pair them positionally with its own sends.
 */

export interface StateMessage {
  type: "state";
  status: string;
  t_s?: number;
  serving?: number;
  rsrp_db?: Record<string, number>;
  snr_db?: number | null;
  gains_db?: Record<string, number>;
  cells?: number[];
  links?: string[];
  n_rb?: number;
  error?: string;
}

export interface TelemetryMessage {
  type: "telemetry";
  t_s: number;
  rsrp_db: Record<string, number>;
  snr_db: number;
  serving: number;
  gains_db: Record<string, number>;
  event: string | null;
}

export interface EventMessage {
  type: "event";
  kind: string;
  /** Signalling messages carry source/target, the switch itself from/to. */
  source?: number;
  target?: number;
  from?: number;
  to?: number;
  t_s?: number;
  t_sent?: number;
  [extra: string]: unknown;
}

export interface AckMessage {
  type: "ack";
  cmd: string;
  link?: string;
  gain_db?: number;
  status?: string;
}

export interface ErrorMessage {
  type: "error";
  reason: string;
  valid_links?: string[];
}

export type ServerMessage =
  | StateMessage
  | TelemetryMessage
  | EventMessage
  | AckMessage
  | ErrorMessage;

export type Command =
  | { cmd: "get_state" }
  | { cmd: "set_gain"; link: string; gain_db: number }
  | { cmd: "start_scenario"; scenario: unknown }
  | { cmd: "stop_scenario" };

const KNOWN_TYPES = new Set(["state", "telemetry", "event", "ack", "error"]);

/** Decode one frame off the socket; null for anything unrecognisable. */
export function parseMessage(raw: unknown): ServerMessage | null {
  let doc: unknown;
  try {
    doc = JSON.parse(String(raw));
  } catch {
    return null;
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    return null;
  }
  const type = (doc as { type?: unknown }).type;
  if (typeof type === "string" && KNOWN_TYPES.has(type)) {
    return doc as ServerMessage;
  }
  return null;
}

/** Timestamp of an event, whichever field the kind uses. */
export function eventTime(event: EventMessage): number | null {
  if (typeof event.t_s === "number") return event.t_s;
  if (typeof event.t_sent === "number") return event.t_sent;
  return null;
}

/** One log line per event, e.g. "t=0.600s  handover 1 -> 2". */
export function describeEvent(event: EventMessage): string {
  const t = eventTime(event);
  const stamp = t === null ? "t=?" : `t=${t.toFixed(3)}s`;
  const a = event.from ?? event.source;
  const b = event.to ?? event.target;
  const route = a !== undefined && b !== undefined ? ` ${a} -> ${b}` : "";
  return `${stamp}  ${event.kind}${route}`;
}
