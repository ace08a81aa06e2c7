"""Pilot-correlation RSRP and SNR estimation.

The UE's view of the radio environment: per-cell RSRP from correlating the
received window against each cell's pilot comb, and serving-cell SNR from the
power left over after subtracting every estimated pilot contribution.  With
orthogonal combs and no noise the gain estimates are exact, so RSRP readings
follow ``20*log10(gain) + cal_db`` analytically.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..errors import AlignmentError
from .frame import IqFrame
from .pilot import PilotSpec, pilot_slice

# Calibration pinned so a unity-gain link reads -20.0 dB, which puts the
# usual "realistic" operating point (-68 dB) at a link gain of 10^(-2.4).
DEFAULT_CAL_DB = -20.0

# Noiseless runs would otherwise report infinite SNR; traces carry this cap.
SNR_CAP_DB = 150.0

# Reported floor for dead cells (|gain estimate| == 0).
RSRP_FLOOR_DB = -200.0


@dataclass(frozen=True)
class MeasurementSnapshot:
    """Per-cell RSRP plus serving-cell SNR at one instant of scenario time."""
    t_s: float
    rsrp_db: Mapping[int, float]
    snr_db: float
    serving: int

    def __post_init__(self):
        if self.serving not in self.rsrp_db:
            raise ValueError(f"snapshot lacks an RSRP entry for serving cell {self.serving}")
        if self.snr_db > SNR_CAP_DB:
            raise ValueError(f"snr_db {self.snr_db} exceeds the {SNR_CAP_DB} dB cap")


def _check_window(window: IqFrame, cells: Mapping[int, PilotSpec]) -> None:
    if not cells:
        raise ValueError("no cells configured")
    specs = list(cells.values())
    first = specs[0]
    for spec in specs[1:]:
        if not first.same_comb_family(spec):
            raise ValueError("all cells must share fft_len, comb_spacing, and tone_count")
    offsets = [s.comb_offset for s in specs]
    if len(set(offsets)) != len(offsets):
        raise ValueError(f"comb offsets must be distinct, got {offsets}")
    n = first.fft_len
    if len(window) == 0 or len(window) % n != 0:
        raise AlignmentError(
            f"window length {len(window)} is not a positive multiple of fft_len {n}")


def comb_gains(window: IqFrame, cells: Mapping[int, PilotSpec]) -> dict[int, complex]:
    """Complex link-gain estimate per cell: ``(1/W) * sum_t window[t] * conj(pilot[t])``."""
    _check_window(window, cells)
    w = len(window)
    out = {}
    for cell_id, spec in cells.items():
        pilot = pilot_slice(spec, window.start_index, w)
        # np.vdot conjugates its first argument.
        out[cell_id] = complex(np.vdot(pilot, window.samples) / w)
    return out


def estimate_rsrp(window: IqFrame, cells: Mapping[int, PilotSpec],
                  cal_db: float = DEFAULT_CAL_DB) -> dict[int, float]:
    """Per-cell RSRP in dB (relative units; see cal_db).

    The window length must be a positive multiple of the comb period and all
    cells must share one comb family with distinct offsets -- that is what
    makes the per-cell estimates exact in the noiseless case.
    """
    gains = comb_gains(window, cells)
    out = {}
    for cell_id, g in gains.items():
        mag = abs(g)
        if mag == 0.0:
            out[cell_id] = RSRP_FLOOR_DB
        else:
            out[cell_id] = max(20.0 * np.log10(mag) + cal_db, RSRP_FLOOR_DB)
    return out


def estimate_snr(window: IqFrame, cells: Mapping[int, PilotSpec], serving: int) -> float:
    """Serving-cell SNR in dB, capped at SNR_CAP_DB.

    The noise estimate is the residual after subtracting every cell's
    estimated pilot contribution from the window; a noiseless window
    therefore reports the cap, and a dead serving cell reports the floor.
    """
    if serving not in cells:
        raise ValueError(f"serving cell {serving} is not configured")
    gains = comb_gains(window, cells)
    w = len(window)
    residual = window.samples.astype(np.complex128, copy=True)
    for cell_id, spec in cells.items():
        residual -= gains[cell_id] * pilot_slice(spec, window.start_index, w)
    p_serving = abs(gains[serving]) ** 2
    p_resid = float(np.mean(np.abs(residual) ** 2))
    if p_serving == 0.0:
        return RSRP_FLOOR_DB
    if p_resid == 0.0:
        return SNR_CAP_DB
    snr = 10.0 * np.log10(p_serving / p_resid)
    return float(min(max(snr, RSRP_FLOOR_DB), SNR_CAP_DB))
