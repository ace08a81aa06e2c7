"""Complex-baseband primitives: frames, gain/mix/noise, rate throttling,
pilot synthesis, and RSRP/SNR estimation."""

from .frame import IqFrame
from .dsp import apply_gain, mix, add_awgn
from .rates import (LTE_BASE_RATE_HZ, THROTTLE_FACTOR, base_rate, throttle_rate,
                    VirtualClock, RealtimeClock, Pacer)
from .pilot import PilotSpec, make_pilot, pilot_period
from .measure import (MeasurementSnapshot, estimate_rsrp, estimate_snr,
                      SNR_CAP_DB, RSRP_FLOOR_DB, DEFAULT_CAL_DB)

__all__ = [
    "IqFrame", "apply_gain", "mix", "add_awgn",
    "LTE_BASE_RATE_HZ", "THROTTLE_FACTOR", "base_rate", "throttle_rate",
    "VirtualClock", "RealtimeClock", "Pacer",
    "PilotSpec", "make_pilot", "pilot_period",
    "MeasurementSnapshot", "estimate_rsrp", "estimate_snr",
    "SNR_CAP_DB", "RSRP_FLOOR_DB", "DEFAULT_CAL_DB",
]
