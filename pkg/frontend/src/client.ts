import { Backoff } from "./backoff.js";
import { GainCoalescer } from "./coalesce.js";
import {
  AckMessage,
  Command,
  ErrorMessage,
  EventMessage,
  parseMessage,
  StateMessage,
  TelemetryMessage,
} from "./protocol.js";

/**
 * The slice of the WebSocket surface the client needs.  Browser sockets
 * and the `ws` package both fit; tests substitute a scripted fake.
 */
export interface WireSocket {
  onopen: (() => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
  send(data: string): void;
  close(): void;
}

export type SocketFactory = (url: string) => WireSocket;

export type ConnectionStatus = "connecting" | "connected" | "disconnected";

export interface ClientCallbacks {
  onStatus?: (status: ConnectionStatus) => void;
  onState?: (state: StateMessage) => void;
  onTelemetry?: (frame: TelemetryMessage) => void;
  onEvent?: (event: EventMessage) => void;
  /** A pending gain resolved: accepted with the acked value, or reverted. */
  onGainSettled?: (link: string, gainDb: number, accepted: boolean) => void;
  onAck?: (ack: AckMessage) => void;
  onError?: (error: ErrorMessage) => void;
}

/** What a slider should show for one link right now. */
export interface GainView {
  value: number;
  pending: boolean;
}

interface InFlight {
  cmd: string;
  link?: string;
  value?: number;
}

/**
 * Dashboard side of the control socket.
 *
 * Connection handling: one socket at a time, reconnect with capped
 * exponential backoff until `close()` is called.  The server pushes a
 * state snapshot on every (re)connect, so recovery needs no replay.
 *
 * Gain handling: `setGain` is optimistic.  The user's value shows as
 * pending immediately, goes out through a coalescer at no more than ten
 * commands a second, and is reconciled when the server answers: an ack
 * confirms it, an error reverts to the last server-confirmed value.
 * Replies carry no sequence numbers but arrive in command order, so
 * they are paired with a FIFO of in-flight commands.
 */
export class DashboardClient {
  private socket: WireSocket | null = null;
  private status: ConnectionStatus = "disconnected";
  private closed = false;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private readonly backoff: Backoff;
  private readonly coalescer: GainCoalescer;
  private readonly inFlight: InFlight[] = [];
  private readonly confirmed = new Map<string, number>();
  private readonly pendingGains = new Map<string, number>();

  constructor(
    private readonly url: string,
    private readonly callbacks: ClientCallbacks,
    private readonly socketFactory: SocketFactory,
    options: { backoff?: Backoff; coalesceMs?: number } = {},
  ) {
    this.backoff = options.backoff ?? new Backoff();
    this.coalescer = new GainCoalescer(
      (link, gainDb) => this.sendCommand({ cmd: "set_gain", link, gain_db: gainDb }),
      options.coalesceMs ?? 100,
    );
  }

  connect(): void {
    if (this.closed || this.socket !== null) return;
    this.setStatus("connecting");
    const socket = this.socketFactory(this.url);
    socket.onopen = () => {
      this.backoff.reset();
      this.setStatus("connected");
    };
    socket.onmessage = (ev) => this.handleFrame(ev.data);
    socket.onclose = () => this.handleClose(socket);
    socket.onerror = () => {
      // The close handler owns recovery; errors always end in a close.
    };
    this.socket = socket;
  }

  /** Stop for good: no further reconnect attempts. */
  close(): void {
    this.closed = true;
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    this.coalescer.dispose();
    const socket = this.socket;
    this.socket = null;
    if (socket !== null) {
      socket.onclose = null;
      socket.close();
    }
    this.setStatus("disconnected");
  }

  get connectionStatus(): ConnectionStatus {
    return this.status;
  }

  /** Slider state for one link, or null if the server never mentioned it. */
  gainView(link: string): GainView | null {
    const pending = this.pendingGains.get(link);
    if (pending !== undefined) return { value: pending, pending: true };
    const confirmed = this.confirmed.get(link);
    if (confirmed !== undefined) return { value: confirmed, pending: false };
    return null;
  }

  /** Optimistically apply a user gain change and queue the command. */
  setGain(link: string, gainDb: number): void {
    this.pendingGains.set(link, gainDb);
    this.coalescer.offer(link, gainDb);
  }

  requestState(): void {
    this.sendCommand({ cmd: "get_state" });
  }

  sendCommand(command: Command): void {
    if (this.socket === null || this.status !== "connected") return;
    if (command.cmd !== "get_state") {
      // get_state is answered with a state message, never ack or error.
      const entry: InFlight = { cmd: command.cmd };
      if (command.cmd === "set_gain") {
        entry.link = command.link;
        entry.value = command.gain_db;
      }
      this.inFlight.push(entry);
    }
    this.socket.send(JSON.stringify(command));
  }

  // -- incoming ------------------------------------------------------------

  private handleFrame(data: unknown): void {
    const message = parseMessage(data);
    if (message === null) return;
    switch (message.type) {
      case "state":
        this.applyGains(message.gains_db, true);
        this.callbacks.onState?.(message);
        break;
      case "telemetry":
        this.applyGains(message.gains_db, false);
        this.callbacks.onTelemetry?.(message);
        break;
      case "event":
        this.callbacks.onEvent?.(message);
        break;
      case "ack":
        this.handleAck(message);
        break;
      case "error":
        this.handleError(message);
        break;
    }
  }

  private applyGains(gains: Record<string, number> | undefined, reset: boolean): void {
    if (gains === undefined) return;
    if (reset) this.confirmed.clear();
    for (const [link, value] of Object.entries(gains)) {
      this.confirmed.set(link, value);
    }
  }

  private handleAck(ack: AckMessage): void {
    const entry = this.inFlight.shift();
    if (entry?.cmd === "set_gain" && ack.link !== undefined && ack.gain_db !== undefined) {
      this.confirmed.set(ack.link, ack.gain_db);
      // Only settle if no newer drag superseded the acked value.
      if (this.pendingGains.get(ack.link) === ack.gain_db) {
        this.pendingGains.delete(ack.link);
        this.callbacks.onGainSettled?.(ack.link, ack.gain_db, true);
      }
      return;
    }
    this.callbacks.onAck?.(ack);
  }

  private handleError(error: ErrorMessage): void {
    const entry = this.inFlight.shift();
    if (entry?.cmd === "set_gain" && entry.link !== undefined) {
      if (this.pendingGains.get(entry.link) === entry.value) {
        this.pendingGains.delete(entry.link);
        const fallback = this.confirmed.get(entry.link) ?? 0;
        this.callbacks.onGainSettled?.(entry.link, fallback, false);
      }
      return;
    }
    this.callbacks.onError?.(error);
  }

  // -- connection loss -----------------------------------------------------

  private handleClose(socket: WireSocket): void {
    if (this.socket !== socket) return;
    this.socket = null;
    this.setStatus("disconnected");
    this.coalescer.dispose();
    this.inFlight.length = 0;
    // Unanswered optimism does not survive the socket; the snapshot on
    // reconnect re-establishes the server's view.
    for (const link of [...this.pendingGains.keys()]) {
      this.pendingGains.delete(link);
      const fallback = this.confirmed.get(link) ?? 0;
      this.callbacks.onGainSettled?.(link, fallback, false);
    }
    if (this.closed) return;
    this.reconnectTimer = setTimeout(() => {
      this.reconnectTimer = null;
      this.connect();
    }, this.backoff.next());
  }

  private setStatus(status: ConnectionStatus): void {
    if (this.status === status) return;
    this.status = status;
    this.callbacks.onStatus?.(status);
  }
}
