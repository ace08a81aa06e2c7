"""ZeroMQ REQ/REP sample transport for interop with external radio stacks.

The reply payload matches the TCP transport's sample encoding, interleaved
little-endian float32 pairs, but without the count header: the sample count
is the payload length divided by eight.  The request payload is treated as
opaque; whatever bytes arrive, the reply carries ``min(chunk, buffered)``
samples, at least one, blocking until one is available.  This mirrors the
REQ/REP pull discipline used by software radio stacks that stream IQ over
ZeroMQ.

Requires pyzmq, which is an optional dependency; import this module only
after checking :data:`HAVE_ZMQ` or be ready for :class:`RuntimeError` at
construction time.
"""

import threading

import numpy as np

try:
    import zmq

    HAVE_ZMQ = True
except ImportError:  # pragma: no cover - exercised only without pyzmq
    zmq = None
    HAVE_ZMQ = False

from ..errors import LinkClosedError, LinkTimeoutError
from .link import DEFAULT_TIMEOUT_S

_WIRE_DTYPE = np.dtype("<c8")
DEFAULT_CHUNK_SAMPLES = 4096


def _require_zmq():
    if not HAVE_ZMQ:
        raise RuntimeError(
            "pyzmq is not installed; install the [zmq] extra to use this "
            "transport"
        )


class ZmqSampleServer:
    """REP socket that answers any request with buffered samples."""

    def __init__(self, channel, endpoint="tcp://127.0.0.1:0",
                 chunk_samples=DEFAULT_CHUNK_SAMPLES, timeout=DEFAULT_TIMEOUT_S):
        _require_zmq()
        self.channel = channel
        self.chunk_samples = int(chunk_samples)
        self.timeout = timeout
        self._ctx = zmq.Context.instance()
        self._sock = self._ctx.socket(zmq.REP)
        if endpoint.endswith(":0"):
            port = self._sock.bind_to_random_port(endpoint[: -len(":0")])
            self.endpoint = f"{endpoint[: -len(':0')]}:{port}"
        else:
            self._sock.bind(endpoint)
            self.endpoint = endpoint
        self._stop = threading.Event()
        self._thread = None

    def start(self):
        self._thread = threading.Thread(target=self._serve, daemon=True)
        self._thread.start()
        return self

    def _serve(self):
        poller = zmq.Poller()
        poller.register(self._sock, zmq.POLLIN)
        while not self._stop.is_set():
            if not poller.poll(timeout=200):
                continue
            self._sock.recv()  # request content is opaque and ignored
            try:
                samples = self.channel.pop(self.chunk_samples, self.timeout)
            except (LinkClosedError, LinkTimeoutError):
                # REP must answer; an empty payload marks end of stream.
                self._sock.send(b"")
                continue
            self._sock.send(samples.astype(_WIRE_DTYPE).tobytes())

    def close(self):
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=2.0)
        self._sock.close(linger=0)


class ZmqSampleClient:
    """REQ socket that pulls sample chunks from a :class:`ZmqSampleServer`."""

    def __init__(self, endpoint, timeout=DEFAULT_TIMEOUT_S):
        _require_zmq()
        self._ctx = zmq.Context.instance()
        self._sock = self._ctx.socket(zmq.REQ)
        self._sock.setsockopt(zmq.RCVTIMEO, int(timeout * 1000))
        self._sock.setsockopt(zmq.SNDTIMEO, int(timeout * 1000))
        self._sock.setsockopt(zmq.LINGER, 0)
        self._sock.connect(endpoint)

    def request(self, payload=b""):
        """Send an opaque request and return the reply as complex samples."""
        try:
            self._sock.send(payload)
            reply = self._sock.recv()
        except zmq.Again as exc:
            raise LinkTimeoutError("no reply within the timeout") from exc
        if not reply:
            raise LinkClosedError("peer reported end of stream")
        return np.frombuffer(reply, dtype=_WIRE_DTYPE).astype(np.complex128)

    def close(self):
        self._sock.close(linger=0)
