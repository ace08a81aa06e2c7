"""Terminal-side handover logic: the neighbor-better trigger and the switch.

The trigger fires when a neighbor's RSRP exceeds the serving cell's by
strictly more than the hysteresis.  The condition must then hold
continuously for the time-to-trigger before a report goes out, and each
entry into the condition produces at most one report.  Timing is evaluated
on measurement snapshots, so with a 100 ms cadence a 0.5 s time-to-trigger
means the report leaves on the sixth consecutive triggering snapshot (the
dwell test is inclusive: elapsed >= time_to_trigger).
"""

from __future__ import annotations

import logging
from typing import Optional

from ..errors import StateError
from ..iqcore.measure import MeasurementSnapshot
from .messages import A3Config, S1Kind, S1Message, UePhase, UeState

log = logging.getLogger(__name__)


def _best_neighbor(snapshot: MeasurementSnapshot, serving: int) -> Optional[int]:
    """Strongest non-serving cell; ties break toward the smallest cell id."""
    best = None
    for cell, rsrp in snapshot.rsrp_db.items():
        if cell == serving:
            continue
        if best is None or rsrp > snapshot.rsrp_db[best] or (
            rsrp == snapshot.rsrp_db[best] and cell < best
        ):
            best = cell
    return best


def a3_check(state: UeState, snapshot: MeasurementSnapshot,
             a3: A3Config) -> Optional[S1Message]:
    """Update trigger bookkeeping for one snapshot; return a report if due.

    Raises :class:`StateError` when the snapshot does not cover the serving
    cell, since the comparison would be meaningless.
    """
    if state.serving not in snapshot.rsrp_db:
        raise StateError(
            f"snapshot at t={snapshot.t_s} has no RSRP for serving cell "
            f"{state.serving}"
        )

    neighbor = _best_neighbor(snapshot, state.serving)
    in_condition = (
        neighbor is not None
        and snapshot.rsrp_db[neighbor]
        > snapshot.rsrp_db[state.serving] + a3.hysteresis_db
    )

    # Entering/leaving bookkeeping happens regardless of phase so the
    # entered-at time always reflects the condition itself.
    if not in_condition:
        state.a3_entered_at = None
        return None
    if state.a3_entered_at is None:
        state.a3_entered_at = snapshot.t_s

    if state.phase is not UePhase.CONNECTED:
        # A handover is already in flight; one report per attempt.
        return None
    if snapshot.t_s - state.a3_entered_at < a3.time_to_trigger_s:
        return None

    state.phase = UePhase.HANDOVER_IN_PROGRESS
    return S1Message(
        kind=S1Kind.MEASUREMENT_REPORT,
        source=state.serving,
        target=neighbor,
        t_sent=snapshot.t_s,
        snapshot=snapshot,
    )


def ue_on_handover_command(state: UeState, msg: S1Message,
                           now: float) -> Optional[S1Message]:
    """Execute a handover command: switch serving cells and notify.

    A command naming the current serving cell is logged and ignored rather
    than executed, so a stale or duplicated command cannot bounce the
    terminal.
    """
    if msg.kind is not S1Kind.HANDOVER_COMMAND:
        raise StateError(f"terminal cannot execute a {msg.kind.value} message")
    if msg.target == state.serving:
        log.warning(
            "handover command to the already-serving cell %s ignored", msg.target
        )
        return None
    if state.phase is not UePhase.HANDOVER_IN_PROGRESS:
        # A command with no procedure in flight is stale, e.g. it lost a
        # race against the source cell's timeout revert.
        log.warning("stale handover command to cell %s ignored", msg.target)
        return None
    previous = state.serving
    state.serving = msg.target
    state.phase = UePhase.CONNECTED
    state.a3_entered_at = None
    return S1Message(
        kind=S1Kind.HANDOVER_NOTIFY,
        source=previous,
        target=msg.target,
        t_sent=now,
        ho_id=msg.ho_id,
    )


def ue_cancel_handover(state: UeState) -> None:
    """Abandon an in-flight handover, keeping the current serving cell."""
    state.phase = UePhase.CONNECTED
    state.a3_entered_at = None
