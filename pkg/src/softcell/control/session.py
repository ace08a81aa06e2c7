"""Live scenario session: one engine on a worker thread, steerable gains.

The session is the boundary between the blocking scenario engine and
whatever front end is driving it.  All mutating entry points take one
lock, so concurrent commands resolve to a total order; telemetry readers
only touch immutable snapshots and a thread-safe event queue.
"""

from __future__ import annotations

import collections
import dataclasses
import logging
import math
import threading
from dataclasses import dataclass
from typing import Optional

from ..errors import ScenarioError, StateError
from ..scenario import Scenario, ScenarioEngine, load_scenario

log = logging.getLogger(__name__)

DEFAULT_TELEMETRY_PERIOD_S = 0.1
STOP_JOIN_TIMEOUT_S = 5.0


@dataclass(frozen=True)
class TelemetryFrame:
    """One cadence tick of observable state while a scenario runs."""

    t_s: float
    rsrp_db: dict
    snr_db: float
    serving: int
    gains_db: dict
    event: Optional[str] = None

    def to_wire(self) -> dict:
        """JSON-ready form: map keys become strings, numbers stay numbers."""
        return {
            "type": "telemetry",
            "t_s": self.t_s,
            "rsrp_db": {str(k): v for k, v in self.rsrp_db.items()},
            "snr_db": self.snr_db,
            "serving": self.serving,
            "gains_db": dict(self.gains_db),
            "event": self.event,
        }


class LiveSession:
    """At most one running scenario, plus the event backlog between polls."""

    def __init__(self):
        self._lock = threading.Lock()
        self._engine: Optional[ScenarioEngine] = None
        self._thread: Optional[threading.Thread] = None
        self._status = "idle"
        self._events = collections.deque()
        self.error: Optional[BaseException] = None

    # -- lifecycle -----------------------------------------------------------

    @property
    def status(self) -> str:
        return self._status

    @property
    def running(self) -> bool:
        return self._status == "running"

    @property
    def valid_links(self) -> tuple:
        eng = self._engine
        return eng.scenario.link_ids if eng is not None else ()

    def start(self, scenario) -> None:
        """Launch a scenario on a worker thread, paced by the wall clock.

        The clock choice in the scenario is overridden: a live session is
        only useful if a human can steer it while it runs.
        """
        with self._lock:
            if self.running:
                raise StateError("a scenario is already running")
            if isinstance(scenario, dict):
                scenario = load_scenario(scenario)
            elif not isinstance(scenario, Scenario):
                raise ScenarioError(
                    f"scenario must be a document or Scenario, "
                    f"got {type(scenario).__name__}")
            scenario = dataclasses.replace(scenario, clock="realtime")
            engine = ScenarioEngine(scenario)
            engine.on_event = self._events.append
            self._engine = engine
            self.error = None
            self._status = "running"
            self._thread = threading.Thread(
                target=self._run, args=(engine,), name="scenario", daemon=True
            )
            self._thread.start()

    def _run(self, engine: ScenarioEngine) -> None:
        try:
            engine.run()
        except Exception as exc:
            log.exception("scenario run failed")
            self.error = exc
            self._status = "failed"
            return
        self._status = "stopped" if engine.stop_requested else "finished"

    def stop(self) -> str:
        """Request a stop and wait for the engine thread to wind down."""
        with self._lock:
            engine, thread = self._engine, self._thread
            if engine is None or thread is None or not thread.is_alive():
                return self._status
            engine.stop_requested = True
        thread.join(timeout=STOP_JOIN_TIMEOUT_S)
        if thread.is_alive():
            raise StateError("scenario thread did not stop in time")
        return self._status

    # -- commands ------------------------------------------------------------

    def set_gain(self, link_id: str, gain_db: float) -> None:
        with self._lock:
            if not self.running:
                raise StateError("no scenario is running")
            try:
                gain = float(gain_db)
            except (TypeError, ValueError):
                raise ValueError(f"gain_db must be a number, got {gain_db!r}")
            if not math.isfinite(gain):
                raise ValueError(f"gain_db must be finite, got {gain}")
            try:
                self._engine.set_gain(str(link_id), gain)
            except KeyError as exc:
                raise ValueError(exc.args[0]) from None

    def snapshot(self) -> dict:
        """Full current state as a JSON-ready document."""
        eng = self._engine
        if eng is None:
            return {"status": "idle"}
        last = eng.last_measurement
        doc = {
            "status": self._status,
            "t_s": last.t_s if last is not None else 0.0,
            "serving": eng.ue.serving,
            "rsrp_db": ({str(k): v for k, v in last.rsrp_db.items()}
                        if last is not None else {}),
            "snr_db": last.snr_db if last is not None else None,
            "gains_db": eng.gains_now(),
            "cells": list(eng.scenario.cell_ids),
            "links": list(eng.scenario.link_ids),
            "n_rb": eng.scenario.n_rb,
        }
        if self.error is not None:
            doc["error"] = str(self.error)
        return doc

    # -- telemetry -----------------------------------------------------------

    def poll(self):
        """Drain buffered events and build the tick's telemetry frame.

        Events survive scenario completion (nothing is lost if a handover
        lands just before the run ends); frames are only produced while
        the scenario is running and has measured at least once.
        """
        events = []
        while True:
            try:
                events.append(self._events.popleft())
            except IndexError:
                break
        frame = None
        eng = self._engine
        if eng is not None and self.running:
            last = eng.last_measurement
            if last is not None:
                frame = TelemetryFrame(
                    t_s=last.t_s,
                    rsrp_db=dict(last.rsrp_db),
                    snr_db=last.snr_db,
                    serving=eng.ue.serving,
                    gains_db=eng.gains_now(),
                    event=events[-1]["kind"] if events else None,
                )
        return frame, events


def handle_command(session: LiveSession, cmd) -> dict:
    """Dispatch one control command object, returning the wire reply.

    Malformed input produces an error reply rather than an exception so a
    socket connection can keep going.
    """
    if not isinstance(cmd, dict):
        return {"type": "error", "reason": "command must be a JSON object"}
    name = cmd.get("cmd")
    if name == "get_state":
        return {"type": "state", **session.snapshot()}
    if name == "set_gain":
        if "link" not in cmd or "gain_db" not in cmd:
            return {"type": "error",
                    "reason": "set_gain requires link and gain_db"}
        try:
            session.set_gain(cmd["link"], cmd["gain_db"])
        except (StateError, ValueError) as exc:
            return {"type": "error", "reason": str(exc),
                    "valid_links": list(session.valid_links)}
        return {"type": "ack", "cmd": "set_gain",
                "link": cmd["link"], "gain_db": float(cmd["gain_db"])}
    if name == "start_scenario":
        if "scenario" not in cmd:
            return {"type": "error", "reason": "start_scenario requires scenario"}
        try:
            session.start(cmd["scenario"])
        except (StateError, ScenarioError) as exc:
            return {"type": "error", "reason": str(exc)}
        return {"type": "ack", "cmd": "start_scenario"}
    if name == "stop_scenario":
        return {"type": "ack", "cmd": "stop_scenario", "status": session.stop()}
    return {"type": "error", "reason": f"unknown cmd {name!r}"}
