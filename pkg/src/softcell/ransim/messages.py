"""Message and state types for the S1 handover choreography."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from ..iqcore.measure import MeasurementSnapshot
from ..iqcore.pilot import PilotSpec


@dataclass(frozen=True)
class CellConfig:
    """One serving-candidate cell: an integer id and its pilot placement."""

    cell_id: int
    pilot: PilotSpec

    def __post_init__(self):
        if int(self.cell_id) != self.cell_id or self.cell_id < 0:
            raise ValueError(f"cell_id must be a small non-negative integer, "
                             f"got {self.cell_id!r}")


class S1Kind(str, enum.Enum):
    """Message kinds, named as they appear on the wire and in event logs."""

    MEASUREMENT_REPORT = "MeasurementReport"
    HANDOVER_REQUIRED = "HandoverRequired"
    HANDOVER_REQUEST = "HandoverRequest"
    HANDOVER_REQUEST_ACK = "HandoverRequestAck"
    HANDOVER_COMMAND = "HandoverCommand"
    HANDOVER_NOTIFY = "HandoverNotify"


# The only legal kind order within one handover, used as a checking aid.
HANDOVER_SEQUENCE = (
    S1Kind.MEASUREMENT_REPORT,
    S1Kind.HANDOVER_REQUIRED,
    S1Kind.HANDOVER_REQUEST,
    S1Kind.HANDOVER_REQUEST_ACK,
    S1Kind.HANDOVER_COMMAND,
    S1Kind.HANDOVER_NOTIFY,
)


@dataclass(frozen=True)
class S1Message:
    """One control-plane message.

    ``source`` and ``target`` are cell ids.  For a measurement report the
    source is the serving cell that receives it and the target is the
    reported neighbor; the same orientation is preserved through the rest of
    the sequence, so ``source`` is always the cell being left and ``target``
    the cell being entered.
    """

    kind: S1Kind
    source: int
    target: int
    t_sent: float
    ho_id: Optional[int] = None
    snapshot: Optional[MeasurementSnapshot] = None

    def to_record(self) -> dict:
        """Flat JSON-friendly view used by event logs."""
        rec = {
            "kind": self.kind.value,
            "source": self.source,
            "target": self.target,
            "t_sent": round(self.t_sent, 6),
        }
        if self.ho_id is not None:
            rec["ho_id"] = self.ho_id
        return rec


@dataclass(frozen=True)
class S1Latency:
    """Core-network delay model: fixed floor plus uniform jitter."""

    fixed_s: float = 0.0
    jitter_s: float = 0.0

    def __post_init__(self):
        if self.fixed_s < 0:
            raise ValueError(f"fixed_s must be >= 0, got {self.fixed_s}")
        if self.jitter_s < 0:
            raise ValueError(f"jitter_s must be >= 0, got {self.jitter_s}")

    def draw(self, rng) -> float:
        """One delay value; consumes randomness only when jitter is nonzero."""
        if self.jitter_s == 0.0:
            return self.fixed_s
        return self.fixed_s + rng.uniform(0.0, self.jitter_s)


@dataclass(frozen=True)
class A3Config:
    """Neighbor-better-than-serving trigger settings and report cadence."""

    hysteresis_db: float = 3.0
    time_to_trigger_s: float = 0.0
    meas_period_s: float = 0.1

    def __post_init__(self):
        if self.hysteresis_db < 0:
            raise ValueError(f"hysteresis_db must be >= 0, got {self.hysteresis_db}")
        if self.time_to_trigger_s < 0:
            raise ValueError(
                f"time_to_trigger_s must be >= 0, got {self.time_to_trigger_s}"
            )
        if self.meas_period_s <= 0:
            raise ValueError(
                f"meas_period_s must be positive, got {self.meas_period_s}"
            )


class UePhase(enum.Enum):
    CONNECTED = "connected"
    HANDOVER_IN_PROGRESS = "handover_in_progress"


@dataclass
class UeState:
    """Mutable terminal state: serving cell, phase, and trigger bookkeeping.

    ``a3_entered_at`` is set exactly while the trigger condition holds; it
    carries the entering time that the time-to-trigger dwell is measured
    from.
    """

    serving: int
    phase: UePhase = UePhase.CONNECTED
    a3_entered_at: Optional[float] = None


@dataclass(frozen=True)
class HandoverEvent:
    """A completed serving-cell change, as surfaced to traces and telemetry."""

    t_s: float
    source: int
    target: int
    ho_id: int

    def to_record(self) -> dict:
        return {
            "kind": "handover",
            "from": self.source,
            "to": self.target,
            "t_s": round(self.t_s, 6),
            "ho_id": self.ho_id,
        }
