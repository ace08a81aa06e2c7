"""Pipelines that move samples between links through per-frame stages.

A stage is a callable taking an :class:`IqFrame` and returning an
:class:`IqFrame` of the same length and rate.  Stages that only make sense at
one sample rate declare it through a ``sample_rate_hz`` attribute and the
bridge refuses to start when the declaration disagrees with the link.
"""

import math
import threading

from ..errors import AlignmentError, LinkClosedError, StartupError
from ..iqcore.dsp import add_awgn, apply_gain
from ..iqcore.frame import IqFrame
from ..iqcore.rates import Pacer, RealtimeClock
from .link import DEFAULT_TIMEOUT_S

DEFAULT_CHUNK_SAMPLES = 4096


class GainStage:
    """Applies a programmable frequency-flat scalar gain, set in dB.

    The gain may be changed from another thread at any time; the new value
    takes effect at the next frame boundary, never mid-frame.
    """

    def __init__(self, gain_db=0.0):
        self.set_db(gain_db)

    def set_db(self, gain_db):
        gain_db = float(gain_db)
        if not math.isfinite(gain_db):
            raise ValueError(f"gain_db must be finite, got {gain_db}")
        # Single attribute store keeps read/write atomic under the GIL.
        self._gain_db = gain_db

    def get_db(self):
        return self._gain_db

    @property
    def linear(self):
        return 10.0 ** (self._gain_db / 20.0)

    def __call__(self, frame):
        return apply_gain(frame, self.linear)


class AwgnStage:
    """Adds white Gaussian noise of fixed per-sample power."""

    def __init__(self, noise_power, rng):
        if noise_power < 0:
            raise ValueError(f"noise_power must be >= 0, got {noise_power}")
        self.noise_power = float(noise_power)
        self.rng = rng

    def __call__(self, frame):
        return add_awgn(frame, self.noise_power, self.rng)


class PaceStage:
    """Delays each frame so the stream leaves at the link rate on average."""

    def __init__(self, target_rate_hz, clock=None):
        if clock is None:
            clock = RealtimeClock()
        self._pacer = Pacer(target_rate_hz, clock)
        self.sample_rate_hz = self._pacer.target_rate_hz

    def __call__(self, frame):
        return self._pacer.pace(frame)


class TapStage:
    """Passes frames through unchanged while copying them to a callback."""

    def __init__(self, callback):
        self.callback = callback

    def __call__(self, frame):
        self.callback(frame)
        return frame


class Bridge:
    """Pulls from one channel, runs the stage chain, pushes to another.

    The bridge rebuilds a gapless frame stream from the raw sample pulls, so
    stages see honest start indices beginning at zero.  Sample conservation
    holds by construction: every sample pulled is pushed exactly once, in
    order, and the counters ``samples_in``/``samples_out`` expose that.
    """

    def __init__(self, source, sink, stages=(), chunk_samples=DEFAULT_CHUNK_SAMPLES,
                 timeout=DEFAULT_TIMEOUT_S):
        if chunk_samples < 1:
            raise ValueError(f"chunk_samples must be >= 1, got {chunk_samples}")
        self.source = source
        self.sink = sink
        self.stages = tuple(stages)
        self.chunk_samples = int(chunk_samples)
        self.timeout = timeout
        self.samples_in = 0
        self.samples_out = 0
        self._thread = None
        self._stop = threading.Event()
        self.error = None

    def _check_rates(self):
        rate = self.source.sample_rate_hz
        if self.sink.sample_rate_hz != rate:
            raise StartupError(
                f"source rate {rate} does not match sink rate "
                f"{self.sink.sample_rate_hz}"
            )
        for stage in self.stages:
            declared = getattr(stage, "sample_rate_hz", None)
            if declared is not None and declared != rate:
                raise StartupError(
                    f"stage {type(stage).__name__} expects {declared} Hz "
                    f"on a {rate} Hz link"
                )

    def start(self):
        self._check_rates()
        self._thread = threading.Thread(target=self._run, daemon=True)
        self._thread.start()
        return self

    def _run(self):
        rate = self.source.sample_rate_hz
        next_start = 0
        try:
            while not self._stop.is_set():
                try:
                    samples = self.source.pop(self.chunk_samples, self.timeout)
                except LinkClosedError:
                    break
                frame = IqFrame(next_start, rate, samples)
                self.samples_in += len(frame)
                for stage in self.stages:
                    out = stage(frame)
                    if len(out) != len(frame) or out.start_index != frame.start_index:
                        raise AlignmentError(
                            f"stage {type(stage).__name__} changed the frame "
                            f"geometry"
                        )
                    frame = out
                next_start = frame.end_index
                self.sink.push(frame.samples, self.timeout)
                self.samples_out += len(frame)
        except LinkClosedError:
            pass
        except Exception as exc:  # surfaced to the joiner, not swallowed
            self.error = exc
        finally:
            self.sink.close_producer()

    def stop(self):
        self._stop.set()
        self.source.close_consumer()
        self.sink.close_consumer()
        if self._thread is not None:
            self._thread.join(timeout=self.timeout)

    def join(self, timeout=None):
        if self._thread is not None:
            self._thread.join(timeout)
        if self.error is not None:
            raise self.error
