"""Per-frame DSP stages: complex gain, mixing, additive noise.

All stages preserve frame boundaries, start indices, and sample rates; they
are pure (or deterministic given the supplied RNG) and safe to call from
concurrent pipeline stages.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import AlignmentError
from .frame import IqFrame


def apply_gain(frame: IqFrame, gain: complex) -> IqFrame:
    """Scale every sample by a complex constant.

    This is the emulator's "multiply constant" block: per-link gains are the
    knob that simulates UE movement between base stations.  Gain values are
    sampled once per frame, so live gain changes take effect at frame
    boundaries.
    """
    return frame.with_samples(complex(gain) * frame.samples)


def mix(frames: Sequence[IqFrame]) -> IqFrame:
    """Sum aligned frames sample-by-sample (the adder in front of the UE).

    All inputs must share start_index, length, and sample rate; anything else
    raises :class:`AlignmentError`.
    """
    if len(frames) == 0:
        raise AlignmentError("mix() needs at least one frame")
    first = frames[0]
    for f in frames[1:]:
        if (f.start_index != first.start_index or len(f) != len(first)
                or f.sample_rate_hz != first.sample_rate_hz):
            raise AlignmentError(
                f"misaligned frames: ({f.start_index}, {len(f)}, {f.sample_rate_hz}) vs "
                f"({first.start_index}, {len(first)}, {first.sample_rate_hz})")
    if len(frames) == 1:
        return first
    total = frames[0].samples.copy()
    for f in frames[1:]:
        total += f.samples
    return first.with_samples(total)


def add_awgn(frame: IqFrame, noise_power: float, rng: np.random.Generator) -> IqFrame:
    """Add circularly-symmetric complex Gaussian noise of the given per-sample power.

    Each of the real and imaginary parts gets variance ``noise_power / 2``.
    ``noise_power == 0`` returns the frame untouched without consuming RNG
    state; a negative power is a domain error.
    """
    if noise_power < 0:
        raise ValueError(f"noise_power must be >= 0, got {noise_power}")
    if noise_power == 0:
        return frame
    sigma = np.sqrt(noise_power / 2.0)
    n = rng.standard_normal(len(frame)) + 1j * rng.standard_normal(len(frame))
    return frame.with_samples(frame.samples + sigma * n)
