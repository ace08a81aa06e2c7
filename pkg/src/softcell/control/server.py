"""HTTP and WebSocket front end for a live session.

Routes:
  GET  /state           full state document (status "idle" when nothing runs)
  POST /gain            {"link": ..., "gain_db": ...}
  POST /scenario/start  body is a scenario document
  POST /scenario/stop
  WS   /ws              one state snapshot on connect, then telemetry and
                        event frames; inbound messages are control commands
  GET  /                dashboard static assets when a build is available

Telemetry fan-out uses a bounded queue per subscriber with drop-oldest
overflow, so a stalled client can never hold up the scenario clock.
"""

from __future__ import annotations

import asyncio
import contextlib
import json
import logging
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.responses import HTMLResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from ..errors import ScenarioError, StateError
from .session import DEFAULT_TELEMETRY_PERIOD_S, LiveSession, handle_command

log = logging.getLogger(__name__)

SUBSCRIBER_QUEUE_MAX = 64

_PLACEHOLDER = """<!doctype html>
<html><head><title>softcell</title></head>
<body><h1>softcell control server</h1>
<p>No dashboard build found. The API lives at /state, /gain, /scenario/*
and the telemetry stream at /ws.</p></body></html>
"""


def _offer(queue: asyncio.Queue, item) -> None:
    """Enqueue, evicting the oldest entry instead of blocking when full."""
    while True:
        try:
            queue.put_nowait(item)
            return
        except asyncio.QueueFull:
            try:
                queue.get_nowait()
            except asyncio.QueueEmpty:
                pass


def create_app(session: Optional[LiveSession] = None, *,
               scenario=None, static_dir=None,
               telemetry_period_s: float = DEFAULT_TELEMETRY_PERIOD_S) -> FastAPI:
    """Build the control app around one session.

    When ``scenario`` is given it is started on server startup, so serving
    a scenario file brings the whole experiment up in one step.
    """
    if session is None:
        session = LiveSession()
    subscribers: set[asyncio.Queue] = set()

    async def ticker():
        while True:
            await asyncio.sleep(telemetry_period_s)
            frame, events = session.poll()
            messages = [{"type": "event", **e} for e in events]
            if frame is not None:
                messages.append(frame.to_wire())
            if not messages:
                continue
            for queue in list(subscribers):
                for message in messages:
                    _offer(queue, message)

    @contextlib.asynccontextmanager
    async def lifespan(app: FastAPI):
        task = asyncio.create_task(ticker())
        if scenario is not None:
            session.start(scenario)
        try:
            yield
        finally:
            task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await task
            if session.running:
                session.stop()

    app = FastAPI(title="softcell control", lifespan=lifespan)
    app.state.session = session

    @app.get("/state")
    async def get_state():
        return session.snapshot()

    @app.post("/gain")
    async def post_gain(request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"error": "body must be a JSON object"}, 400)
        if not isinstance(body, dict) or "link" not in body or "gain_db" not in body:
            return JSONResponse(
                {"error": "body must carry link and gain_db",
                 "valid_links": list(session.valid_links)}, 400)
        try:
            session.set_gain(body["link"], body["gain_db"])
        except StateError as exc:
            return JSONResponse({"error": str(exc)}, 409)
        except ValueError as exc:
            return JSONResponse(
                {"error": str(exc),
                 "valid_links": list(session.valid_links)}, 400)
        return {"ok": True, "link": body["link"],
                "gain_db": float(body["gain_db"])}

    @app.post("/scenario/start")
    async def post_start(request: Request):
        try:
            body = await request.json()
        except Exception:
            return JSONResponse({"error": "body must be a scenario document"}, 400)
        try:
            session.start(body)
        except StateError as exc:
            return JSONResponse({"error": str(exc)}, 409)
        except ScenarioError as exc:
            return JSONResponse({"error": str(exc)}, 400)
        return {"ok": True, "status": session.status}

    @app.post("/scenario/stop")
    async def post_stop():
        return {"ok": True, "status": session.stop()}

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        send_lock = asyncio.Lock()

        async def send(message: dict) -> None:
            async with send_lock:
                await ws.send_json(message)

        await send({"type": "state", **session.snapshot()})
        queue: asyncio.Queue = asyncio.Queue(maxsize=SUBSCRIBER_QUEUE_MAX)
        subscribers.add(queue)

        async def pump():
            while True:
                await send(await queue.get())

        async def commands():
            while True:
                raw = await ws.receive_text()
                try:
                    cmd = json.loads(raw)
                except json.JSONDecodeError:
                    await send({"type": "error", "reason": "invalid JSON"})
                    continue
                await send(handle_command(session, cmd))

        pump_task = asyncio.create_task(pump())
        try:
            await commands()
        except WebSocketDisconnect:
            pass
        finally:
            pump_task.cancel()
            with contextlib.suppress(asyncio.CancelledError):
                await pump_task
            subscribers.discard(queue)

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True),
                  name="dashboard")
    else:
        @app.get("/")
        async def index():
            return HTMLResponse(_PLACEHOLDER)

    return app
