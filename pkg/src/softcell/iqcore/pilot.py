"""Per-cell pilot combs.

Each cell transmits a comb of equal-power tones on an ``fft_len``-sample DFT
grid.  Combs with the same grid, spacing, and tone count but different
offsets occupy disjoint DFT bins, so they are exactly orthogonal over any
window whose length is a multiple of ``fft_len`` -- which is what makes
per-cell RSRP separable by correlation.  This stands in for the cell-specific
reference signals of a real LTE downlink.

The waveform of one full period is cached per spec; arbitrary slices are
gathered from that period, so synthesis cost does not grow with the stream
position.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import kernels
from .frame import IqFrame


@dataclass(frozen=True)
class PilotSpec:
    fft_len: int = 4096
    comb_spacing: int = 16
    comb_offset: int = 0
    tone_count: int = 64

    def __post_init__(self):
        n, c, o, m = self.fft_len, self.comb_spacing, self.comb_offset, self.tone_count
        if n < 2 or (n & (n - 1)) != 0:
            raise ValueError(f"fft_len must be a power of two >= 2, got {n}")
        if c < 1:
            raise ValueError(f"comb_spacing must be >= 1, got {c}")
        if not 0 <= o < c:
            raise ValueError(f"comb_offset must be in [0, {c}), got {o}")
        if m < 1:
            raise ValueError(f"tone_count must be >= 1, got {m}")
        if o + c * (m - 1) >= n // 2:
            raise ValueError(
                f"tone comb exceeds half the grid: offset {o} + spacing {c} x {m - 1} >= {n // 2}")

    @property
    def bins(self) -> np.ndarray:
        """Occupied DFT bin indices: offset + spacing * [0..tone_count)."""
        return self.comb_offset + self.comb_spacing * np.arange(self.tone_count, dtype=np.int64)

    def same_comb_family(self, other: "PilotSpec") -> bool:
        """True when the two specs share grid, spacing, and tone count."""
        return (self.fft_len == other.fft_len
                and self.comb_spacing == other.comb_spacing
                and self.tone_count == other.tone_count)


@lru_cache(maxsize=64)
def pilot_period(spec: PilotSpec) -> np.ndarray:
    """One ``fft_len``-sample period of the pilot, unit mean power, read-only."""
    scale = 1.0 / np.sqrt(spec.tone_count)
    period = kernels.tone_comb(spec.bins, np.zeros(spec.tone_count), spec.fft_len,
                               0, spec.fft_len, scale)
    period.setflags(write=False)
    return period


def pilot_slice(spec: PilotSpec, start_index: int, length: int) -> np.ndarray:
    """Pilot samples for absolute stream positions [start_index, start_index+length)."""
    if length < 1:
        raise ValueError(f"length must be >= 1, got {length}")
    idx = (np.arange(length, dtype=np.int64) + np.int64(start_index)) % spec.fft_len
    return pilot_period(spec)[idx]


def make_pilot(spec: PilotSpec, start_index: int, length: int,
               sample_rate_hz: float = 1.0) -> IqFrame:
    """An IqFrame holding the pilot waveform at the given stream position.

    Sample t is ``(1/sqrt(M)) * sum_m exp(j*2*pi*(o + C*m)*(start_index+t)/N)``:
    periodic with period N, mean power exactly 1 over any whole number of
    periods.
    """
    return IqFrame(start_index, sample_rate_hz, pilot_slice(spec, start_index, length))
