"""Memoryless AM/AM power-amplifier model (Rapp form).

The transfer is ``y = G*x / (1 + (G*|x|/a_sat)^(2p))^(1/(2p))``: linear with
small-signal gain G well below saturation, output amplitude pinned at
``a_sat`` far above it, with the knee sharpness set by p.  Phase is
untouched, which is what makes the model memoryless AM/AM only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import kernels
from ..iqcore.frame import IqFrame


@dataclass(frozen=True)
class PaParams:
    """Amplifier settings: gain in dB, saturation amplitude, knee sharpness."""

    small_signal_gain_db: float = 0.0
    a_sat: float = 1.0
    p: float = 2.0

    def __post_init__(self):
        if self.a_sat <= 0:
            raise ValueError(f"a_sat must be positive, got {self.a_sat}")
        if self.p <= 0:
            raise ValueError(f"p must be positive, got {self.p}")

    @property
    def gain_linear(self) -> float:
        return 10.0 ** (self.small_signal_gain_db / 20.0)


def rapp_pa(frame: IqFrame, pa: PaParams) -> IqFrame:
    """Pass a frame through the amplifier; timing and rate are unchanged."""
    out = kernels.rapp_amam(frame.samples, pa.gain_linear, pa.a_sat, pa.p)
    return frame.with_samples(out)
