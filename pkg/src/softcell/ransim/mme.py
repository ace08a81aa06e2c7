"""Core-network message routing with a configurable latency model.

The router is a pure function of (message, time, RNG): it emits the next
message in the sequence together with its delivery time, which is the
current time plus one latency draw.  It holds no per-handover state; the
base stations own that.
"""

from __future__ import annotations

import logging
from typing import List, Tuple

from ..errors import ProtocolError
from .messages import S1Kind, S1Latency, S1Message

log = logging.getLogger(__name__)

# Kinds an MME can legally receive over S1.
_INBOUND = (
    S1Kind.HANDOVER_REQUIRED,
    S1Kind.HANDOVER_REQUEST_ACK,
    S1Kind.HANDOVER_NOTIFY,
)


class MmeRouter:
    """Turns each inbound S1 message into zero or one delayed outputs."""

    def __init__(self, cells, latency: S1Latency = S1Latency(), rng=None):
        self.cells = frozenset(int(c) for c in cells)
        self.latency = latency
        self.rng = rng
        if latency.jitter_s > 0 and rng is None:
            raise ValueError("a latency model with jitter needs an rng")

    def route(self, msg: S1Message, now: float) -> List[Tuple[float, S1Message]]:
        """Route one message; returns ``[(deliver_at, message)]`` or ``[]``.

        Messages naming a cell this core does not know are dropped with a
        warning, mirroring how a real core discards signalling for
        unconfigured targets.  Kinds that never transit an MME raise
        :class:`ProtocolError`.
        """
        if msg.kind not in _INBOUND:
            raise ProtocolError(f"MME cannot route a {msg.kind.value} message")
        if msg.source not in self.cells or msg.target not in self.cells:
            log.warning(
                "dropping %s for unknown cell (source=%s target=%s known=%s)",
                msg.kind.value, msg.source, msg.target, sorted(self.cells),
            )
            return []

        if msg.kind is S1Kind.HANDOVER_NOTIFY:
            # Terminal point of the sequence; nothing further to send.
            return []

        if msg.kind is S1Kind.HANDOVER_REQUIRED:
            out_kind = S1Kind.HANDOVER_REQUEST
        else:
            out_kind = S1Kind.HANDOVER_COMMAND
        deliver_at = now + self.latency.draw(self.rng)
        out = S1Message(
            kind=out_kind,
            source=msg.source,
            target=msg.target,
            t_sent=now,
            ho_id=msg.ho_id,
        )
        return [(deliver_at, out)]
