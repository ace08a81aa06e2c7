"""TCP framing for the sample request protocol.

Wire format, all little-endian:

* request: one unsigned 32-bit integer, the desired sample count (>= 1),
* reply: one unsigned 32-bit integer ``n`` followed by ``n`` interleaved
  float32 pairs (real, imaginary), so ``4 + 8 * n`` bytes total.

A reply always carries at least one sample.  End of stream is signalled by
closing the connection, which the client surfaces as
:class:`LinkClosedError`.  A zero-count request is a protocol violation; the
server drops the connection on receiving one.
"""

import socket
import struct
import threading

import numpy as np

from ..errors import LinkClosedError, LinkTimeoutError, ProtocolError
from .link import DEFAULT_TIMEOUT_S

_U32 = struct.Struct("<I")
_WIRE_DTYPE = np.dtype("<c8")


def _recv_exact(sock, n):
    buf = bytearray()
    while len(buf) < n:
        try:
            chunk = sock.recv(n - len(buf))
        except socket.timeout as exc:
            raise LinkTimeoutError("socket receive timed out") from exc
        if not chunk:
            if buf:
                raise ProtocolError(
                    f"connection closed mid-message ({len(buf)}/{n} bytes)"
                )
            raise LinkClosedError("connection closed by peer")
        buf.extend(chunk)
    return bytes(buf)


class TcpSampleServer:
    """Answers framed sample requests from a :class:`SampleChannel`.

    Connections are handled one request at a time; each request pops
    ``min(count, buffered)`` samples (blocking for the first one) and sends
    them back as float32 pairs.  When the channel's provider closes and the
    buffer drains, the connection is closed.
    """

    def __init__(self, channel, host="127.0.0.1", port=0, timeout=DEFAULT_TIMEOUT_S):
        self.channel = channel
        self.timeout = timeout
        self._sock = socket.create_server((host, port))
        self._sock.settimeout(0.2)
        self.host, self.port = self._sock.getsockname()[:2]
        self._stop = threading.Event()
        self._thread = None

    def start(self):
        self._thread = threading.Thread(target=self._accept_loop, daemon=True)
        self._thread.start()
        return self

    def _accept_loop(self):
        while not self._stop.is_set():
            try:
                conn, _addr = self._sock.accept()
            except socket.timeout:
                continue
            except OSError:
                break
            threading.Thread(
                target=self._serve_conn, args=(conn,), daemon=True
            ).start()

    def _serve_conn(self, conn):
        conn.settimeout(self.timeout)
        try:
            while not self._stop.is_set():
                try:
                    header = _recv_exact(conn, _U32.size)
                except (LinkClosedError, LinkTimeoutError, ProtocolError):
                    return
                (count,) = _U32.unpack(header)
                if count == 0:
                    return
                try:
                    samples = self.channel.pop(count, self.timeout)
                except (LinkClosedError, LinkTimeoutError):
                    return
                payload = samples.astype(_WIRE_DTYPE).tobytes()
                conn.sendall(_U32.pack(len(samples)) + payload)
        except OSError:
            pass
        finally:
            conn.close()

    def close(self):
        self._stop.set()
        self._sock.close()
        if self._thread is not None:
            self._thread.join(timeout=2.0)


class TcpSampleClient:
    """Requests samples from a :class:`TcpSampleServer`."""

    def __init__(self, host, port, timeout=DEFAULT_TIMEOUT_S):
        self._sock = socket.create_connection((host, port), timeout=timeout)

    def request(self, count):
        if int(count) != count or count < 1:
            raise ProtocolError(f"sample request count must be >= 1, got {count!r}")
        try:
            self._sock.sendall(_U32.pack(int(count)))
        except OSError as exc:
            raise LinkClosedError("connection closed by peer") from exc
        header = _recv_exact(self._sock, _U32.size)
        (n,) = _U32.unpack(header)
        if n == 0:
            raise ProtocolError("peer sent an empty reply")
        if n > count:
            raise ProtocolError(f"peer sent {n} samples for a request of {count}")
        payload = _recv_exact(self._sock, 8 * n)
        wire = np.frombuffer(payload, dtype=_WIRE_DTYPE)
        return wire.astype(np.complex128)

    def close(self):
        self._sock.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False
