"""LTE sample rates and delivery pacing.

srsRAN-style virtual radios run far faster than any real SDR, so links are
paced to the 3/4-of-nominal rates that srsRAN itself uses with most hardware.
The rate table is closed over the six standard LTE bandwidths; anything else
is rejected rather than extrapolated.
"""

from __future__ import annotations

import time

from .frame import IqFrame

# 15 kHz subcarrier spacing times the FFT size for each standard bandwidth.
LTE_BASE_RATE_HZ = {
    6: 1.92e6,
    15: 3.84e6,
    25: 7.68e6,
    50: 15.36e6,
    75: 23.04e6,
    100: 30.72e6,
}

THROTTLE_FACTOR = 0.75


def base_rate(n_rb: int) -> float:
    """Nominal LTE baseband rate for a resource-block count."""
    try:
        return LTE_BASE_RATE_HZ[n_rb]
    except KeyError:
        raise ValueError(
            f"unsupported n_rb {n_rb}; valid values: {sorted(LTE_BASE_RATE_HZ)}") from None


def throttle_rate(n_rb: int) -> float:
    """3/4 of the nominal rate: the pacing rate used on emulated links."""
    return THROTTLE_FACTOR * base_rate(n_rb)


class VirtualClock:
    """Logical time source: sleeping just advances the timestamp."""

    def __init__(self, t0: float = 0.0):
        self._t = float(t0)

    def now(self) -> float:
        return self._t

    def sleep_until(self, t: float) -> None:
        if t > self._t:
            self._t = t


class RealtimeClock:
    """Wall-clock time source anchored at construction."""

    def __init__(self):
        self._origin = time.monotonic()

    def now(self) -> float:
        return time.monotonic() - self._origin

    def sleep_until(self, t: float) -> None:
        while True:
            dt = t - self.now()
            if dt <= 0:
                return
            time.sleep(dt)


class Pacer:
    """Delay frame delivery so the long-run rate matches a target.

    Deadlines are cumulative (each frame is due ``len / target_rate`` after
    the previous one), so transient oversleeps are absorbed instead of
    accumulating: the long-run delivered rate converges on the target.  On a
    virtual clock the advance is exact.  Sample values are untouched.
    """

    def __init__(self, target_rate_hz: float, clock):
        if not target_rate_hz > 0:
            raise ValueError(f"target_rate_hz must be positive, got {target_rate_hz}")
        self.target_rate_hz = float(target_rate_hz)
        self.clock = clock
        self._due = None

    def pace(self, frame: IqFrame) -> IqFrame:
        if self._due is None:
            self._due = self.clock.now()
        self._due += len(frame) / self.target_rate_hz
        self.clock.sleep_until(self._due)
        return frame

    __call__ = pace


def pace(frame: IqFrame, target_rate: float, clock) -> IqFrame:
    """One-shot pacing of a single frame (stateless convenience wrapper)."""
    return Pacer(target_rate, clock).pace(frame)
