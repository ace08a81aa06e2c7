"""S1 handover control plane: UE measurement logic, eNB and MME machines."""

from .messages import (
    HANDOVER_SEQUENCE,
    A3Config,
    CellConfig,
    HandoverEvent,
    S1Kind,
    S1Latency,
    S1Message,
    UePhase,
    UeState,
)
from .ue import a3_check, ue_cancel_handover, ue_on_handover_command
from .enb import EnbMachine
from .mme import MmeRouter

__all__ = [
    "S1Kind",
    "S1Message",
    "S1Latency",
    "HANDOVER_SEQUENCE",
    "A3Config",
    "CellConfig",
    "UePhase",
    "UeState",
    "HandoverEvent",
    "a3_check",
    "ue_on_handover_command",
    "ue_cancel_handover",
    "EnbMachine",
    "MmeRouter",
]
