"""Bounded in-process sample links with a receiver-driven request protocol."""

import threading

import numpy as np

from ..errors import AlignmentError, LinkClosedError, LinkTimeoutError, ProtocolError
from ..iqcore.frame import IqFrame

DEFAULT_CAPACITY_S = 1.0
DEFAULT_TIMEOUT_S = 5.0


class SampleChannel:
    """Single-producer single-consumer sample buffer with backpressure.

    The buffer holds at most ``capacity_s`` seconds of samples at the link
    rate.  ``push`` blocks while the buffer is full, ``pop`` blocks while it
    is empty, so a slow consumer throttles the producer and vice versa.
    Either side may close; the other side then sees :class:`LinkClosedError`
    once no more progress is possible.
    """

    def __init__(self, sample_rate_hz, capacity_s=DEFAULT_CAPACITY_S):
        if sample_rate_hz <= 0:
            raise ValueError(f"sample_rate_hz must be positive, got {sample_rate_hz}")
        if capacity_s <= 0:
            raise ValueError(f"capacity_s must be positive, got {capacity_s}")
        self.sample_rate_hz = float(sample_rate_hz)
        self.capacity = max(1, int(round(sample_rate_hz * capacity_s)))
        self._chunks = []
        self._count = 0
        self._popped = 0
        self._cond = threading.Condition()
        self._producer_closed = False
        self._consumer_closed = False

    @property
    def buffered(self):
        """Number of samples currently waiting in the buffer."""
        with self._cond:
            return self._count

    @property
    def popped(self):
        """Total samples handed to the consumer since the channel was created."""
        with self._cond:
            return self._popped

    def push(self, samples, timeout=DEFAULT_TIMEOUT_S):
        """Append samples, blocking while the buffer lacks room for them."""
        arr = np.ascontiguousarray(samples, dtype=np.complex128)
        if arr.ndim != 1:
            raise ValueError("samples must be one dimensional")
        if arr.size == 0:
            return
        if arr.size > self.capacity:
            # Oversized chunks would deadlock against the cap; split them.
            half = arr.size // 2
            self.push(arr[:half], timeout)
            self.push(arr[half:], timeout)
            return
        with self._cond:
            def has_room():
                return (
                    self._consumer_closed
                    or self._count + arr.size <= self.capacity
                )

            if not self._cond.wait_for(has_room, timeout):
                raise LinkTimeoutError(
                    f"push of {arr.size} samples timed out after {timeout} s "
                    f"({self._count}/{self.capacity} buffered)"
                )
            if self._consumer_closed:
                raise LinkClosedError("consumer side of the link is closed")
            self._chunks.append(arr)
            self._count += arr.size
            self._cond.notify_all()

    def pop(self, count, timeout=DEFAULT_TIMEOUT_S):
        """Return ``min(count, buffered)`` samples, blocking until at least one.

        ``count`` must be a positive integer; a request for zero samples is a
        protocol violation, not an empty reply.
        """
        if int(count) != count or count < 1:
            raise ProtocolError(f"sample request count must be >= 1, got {count!r}")
        count = int(count)
        with self._cond:
            def ready():
                return self._count > 0 or self._producer_closed or self._consumer_closed

            if not self._cond.wait_for(ready, timeout):
                raise LinkTimeoutError(
                    f"no samples arrived within {timeout} s"
                )
            if self._consumer_closed:
                raise LinkClosedError("consumer side of the link is closed")
            if self._count == 0:
                # Producer gone and the buffer fully drained.
                raise LinkClosedError("provider side of the link is closed")
            take = min(count, self._count)
            out = np.empty(take, dtype=np.complex128)
            filled = 0
            while filled < take:
                head = self._chunks[0]
                need = take - filled
                if head.size <= need:
                    out[filled:filled + head.size] = head
                    filled += head.size
                    self._chunks.pop(0)
                else:
                    out[filled:] = head[:need]
                    self._chunks[0] = head[need:]
                    filled = take
            self._count -= take
            self._popped += take
            self._cond.notify_all()
            return out

    def close_producer(self):
        with self._cond:
            self._producer_closed = True
            self._cond.notify_all()

    def close_consumer(self):
        with self._cond:
            self._consumer_closed = True
            self._cond.notify_all()


class InProcLink:
    """A named unidirectional link backed by a :class:`SampleChannel`."""

    def __init__(self, link_id, sample_rate_hz, capacity_s=DEFAULT_CAPACITY_S):
        self.link_id = str(link_id)
        self.channel = SampleChannel(sample_rate_hz, capacity_s)

    @property
    def sample_rate_hz(self):
        return self.channel.sample_rate_hz

    def request(self, count, timeout=DEFAULT_TIMEOUT_S):
        return self.channel.pop(count, timeout)

    def close(self):
        self.channel.close_producer()
        self.channel.close_consumer()


def serve_samples(channel, frames, timeout=DEFAULT_TIMEOUT_S):
    """Feed a gapless frame stream into a channel until it is exhausted.

    Frames must be contiguous (each starts where the previous one ended) and
    share the channel's sample rate.  Returns the number of samples served.
    Exits quietly if the consumer closes mid-stream.
    """
    expected_start = None
    served = 0
    try:
        for frame in frames:
            if not isinstance(frame, IqFrame):
                raise TypeError(f"expected IqFrame, got {type(frame).__name__}")
            if frame.sample_rate_hz != channel.sample_rate_hz:
                raise AlignmentError(
                    f"frame rate {frame.sample_rate_hz} does not match link rate "
                    f"{channel.sample_rate_hz}"
                )
            if expected_start is not None and frame.start_index != expected_start:
                raise AlignmentError(
                    f"gap in stream: expected start {expected_start}, "
                    f"got {frame.start_index}"
                )
            expected_start = frame.end_index
            channel.push(frame.samples, timeout)
            served += len(frame)
    except LinkClosedError:
        pass
    finally:
        channel.close_producer()
    return served


def request_samples(link, count, timeout=DEFAULT_TIMEOUT_S):
    """Pull up to ``count`` samples from a link's consumer side."""
    if hasattr(link, "request"):
        return link.request(count, timeout)
    return link.pop(count, timeout)
