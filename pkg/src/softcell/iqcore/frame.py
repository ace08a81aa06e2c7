"""The IqFrame: a timestamped block of complex baseband samples.

Frames are immutable once built.  On a given link every frame carries the same
sample rate, and consecutive frames are gapless: ``start_index`` of frame k+1
equals ``start_index + len`` of frame k.  Stages never mutate a frame in
place; they derive a new one via :meth:`IqFrame.with_samples`.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class IqFrame:
    start_index: int
    sample_rate_hz: float
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.start_index < 0:
            raise ValueError(f"start_index must be >= 0, got {self.start_index}")
        if not self.sample_rate_hz > 0:
            raise ValueError(f"sample_rate_hz must be positive, got {self.sample_rate_hz}")
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1 or samples.size == 0:
            raise ValueError("samples must be a non-empty 1-D sequence")
        samples = samples.copy() if samples is self.samples else samples
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.shape[0]

    @property
    def end_index(self) -> int:
        """Start index of the frame that follows in a gapless stream."""
        return self.start_index + len(self)

    @property
    def duration_s(self) -> float:
        return len(self) / self.sample_rate_hz

    def with_samples(self, samples: np.ndarray) -> "IqFrame":
        """A frame with the same position and rate but new sample values."""
        return IqFrame(self.start_index, self.sample_rate_hz, samples)
