"""Live control: session management, HTTP/WebSocket server, CLI."""

from .session import (
    DEFAULT_TELEMETRY_PERIOD_S,
    LiveSession,
    TelemetryFrame,
    handle_command,
)

__all__ = [
    "DEFAULT_TELEMETRY_PERIOD_S",
    "LiveSession",
    "TelemetryFrame",
    "handle_command",
]
