"""Base-station state machine for both sides of an S1 handover.

One :class:`EnbMachine` instance plays the source role (turning measurement
reports into handover-required messages) and, under a different cell id,
the target role (admitting requests).  A machine tracks at most one
outbound handover at a time and reverts it if the sequence stalls.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Optional

from ..errors import ProtocolError
from .messages import S1Kind, S1Message

log = logging.getLogger(__name__)

DEFAULT_HO_TIMEOUT_S = 1.0


@dataclass
class _PendingHandover:
    ho_id: int
    target: int
    started_at: float


class EnbMachine:
    """Per-cell control logic with a single-procedure-in-flight rule.

    Pass one shared ``ho_counter`` to every machine of a simulation so
    handover ids are unique across cells yet restart from 1 on each run,
    keeping runs reproducible.
    """

    def __init__(self, cell_id: int, known_cells,
                 ho_timeout_s: float = DEFAULT_HO_TIMEOUT_S, ho_counter=None,
                 admit: bool = True):
        if ho_timeout_s <= 0:
            raise ValueError(f"ho_timeout_s must be positive, got {ho_timeout_s}")
        self.cell_id = int(cell_id)
        self.known_cells = frozenset(int(c) for c in known_cells)
        self.ho_timeout_s = float(ho_timeout_s)
        self.admit = bool(admit)
        self._ho_ids = ho_counter if ho_counter is not None else itertools.count(1)
        self.pending: Optional[_PendingHandover] = None
        self._admitted: set[int] = set()

    def on_meas_report(self, msg: S1Message, now: float) -> Optional[S1Message]:
        """Start a handover toward the reported neighbor, if allowed.

        Unknown target cells are a protocol violation.  While a procedure is
        already pending, further reports are absorbed without effect.
        """
        if msg.kind is not S1Kind.MEASUREMENT_REPORT:
            raise ProtocolError(
                f"cell {self.cell_id} expected a measurement report, got "
                f"{msg.kind.value}"
            )
        if msg.target not in self.known_cells:
            raise ProtocolError(
                f"measurement report names unknown cell {msg.target}; known "
                f"cells: {sorted(self.known_cells)}"
            )
        if msg.target == self.cell_id:
            raise ProtocolError(
                f"measurement report targets its own serving cell {self.cell_id}"
            )
        if self.pending is not None:
            log.debug(
                "cell %s ignoring report while handover %s is pending",
                self.cell_id, self.pending.ho_id,
            )
            return None
        ho_id = next(self._ho_ids)
        self.pending = _PendingHandover(ho_id, msg.target, now)
        return S1Message(
            kind=S1Kind.HANDOVER_REQUIRED,
            source=self.cell_id,
            target=msg.target,
            t_sent=now,
            ho_id=ho_id,
        )

    def on_handover_request(self, msg: S1Message, now: float) -> Optional[S1Message]:
        """Target-side admission.  Always admits; duplicates get no second ack."""
        if msg.kind is not S1Kind.HANDOVER_REQUEST:
            raise ProtocolError(
                f"cell {self.cell_id} expected a handover request, got "
                f"{msg.kind.value}"
            )
        if msg.target != self.cell_id:
            raise ProtocolError(
                f"handover request for cell {msg.target} delivered to cell "
                f"{self.cell_id}"
            )
        if not self.admit:
            log.warning(
                "cell %s has admission disabled; handover %s gets no ack",
                self.cell_id, msg.ho_id,
            )
            return None
        if msg.ho_id in self._admitted:
            log.debug("cell %s already admitted handover %s", self.cell_id, msg.ho_id)
            return None
        self._admitted.add(msg.ho_id)
        return S1Message(
            kind=S1Kind.HANDOVER_REQUEST_ACK,
            source=msg.source,
            target=self.cell_id,
            t_sent=now,
            ho_id=msg.ho_id,
        )

    def complete(self, ho_id: int) -> None:
        """Clear the pending procedure once its notify has been observed."""
        if self.pending is not None and self.pending.ho_id == ho_id:
            self.pending = None

    def check_timeout(self, now: float) -> Optional[int]:
        """Revert a stalled procedure; returns its id when one was dropped."""
        if self.pending is None:
            return None
        if now - self.pending.started_at < self.ho_timeout_s:
            return None
        ho_id = self.pending.ho_id
        log.warning(
            "cell %s handover %s timed out after %.3f s; reverting",
            self.cell_id, ho_id, now - self.pending.started_at,
        )
        self.pending = None
        return ho_id
