"""TCP sample transport: wire framing and the request contract over sockets."""

import socket
import struct
import threading

import numpy as np
import pytest

from softcell.errors import LinkClosedError, ProtocolError
from softcell.iqcore import IqFrame
from softcell.transport import SampleChannel, TcpSampleClient, TcpSampleServer, serve_samples

RATE = 1e6


def ramp(n, start=0):
    idx = np.arange(start, start + n, dtype=np.float64)
    return ((idx + 1) / (start + n) + 1j * (idx + 2) / (start + n)).astype(np.complex128)


@pytest.fixture
def server():
    ch = SampleChannel(RATE)
    srv = TcpSampleServer(ch).start()
    yield ch, srv
    srv.close()


def test_request_reply_roundtrip(server):
    ch, srv = server
    data = ramp(256)
    ch.push(data)
    with TcpSampleClient(srv.host, srv.port) as cli:
        got = cli.request(100)
        assert len(got) == 100
        # float32 on the wire: compare at single precision
        np.testing.assert_allclose(got, data[:100], rtol=2e-7, atol=2e-7)
        rest = cli.request(1000)
        assert len(rest) == 156


def test_reply_never_exceeds_request(server):
    ch, srv = server
    ch.push(ramp(500))
    with TcpSampleClient(srv.host, srv.port) as cli:
        for n in (1, 7, 64):
            assert len(cli.request(n)) == n


def test_zero_count_rejected_client_side(server):
    _, srv = server
    with TcpSampleClient(srv.host, srv.port) as cli:
        with pytest.raises(ProtocolError):
            cli.request(0)


def test_server_drops_connection_on_raw_zero_request(server):
    ch, srv = server
    ch.push(ramp(10))
    raw = socket.create_connection((srv.host, srv.port), timeout=2.0)
    raw.sendall(struct.pack("<I", 0))
    # The server closes; the next read sees EOF.
    assert raw.recv(4) == b""
    raw.close()


def test_end_of_stream_surfaces_as_closed_link(server):
    ch, srv = server
    ch.push(ramp(32))
    ch.close_producer()
    with TcpSampleClient(srv.host, srv.port) as cli:
        assert len(cli.request(32)) == 32
        with pytest.raises(LinkClosedError):
            cli.request(1)


def test_wire_format_is_little_endian_float32_pairs(server):
    ch, srv = server
    data = np.array([1.5 - 2.5j, 0.25 + 0.125j], dtype=np.complex128)
    ch.push(data)
    raw = socket.create_connection((srv.host, srv.port), timeout=2.0)
    raw.sendall(struct.pack("<I", 2))
    reply = b""
    while len(reply) < 4 + 16:
        chunk = raw.recv(4 + 16 - len(reply))
        assert chunk
        reply += chunk
    raw.close()
    (n,) = struct.unpack("<I", reply[:4])
    assert n == 2
    floats = struct.unpack("<4f", reply[4:])
    assert floats == (1.5, -2.5, 0.25, 0.125)  # re, im interleaved


def test_streaming_through_tcp_conserves_order(server):
    ch, srv = server
    total = 51_200
    frames = (IqFrame(s, RATE, ramp(512, s)) for s in range(0, total, 512))
    feeder = threading.Thread(target=serve_samples, args=(ch, frames))
    feeder.start()
    out = []
    with TcpSampleClient(srv.host, srv.port) as cli:
        while sum(map(len, out)) < total:
            out.append(cli.request(999))
    feeder.join()
    got = np.concatenate(out)
    assert len(got) == total
    want = np.concatenate([ramp(512, s) for s in range(0, total, 512)])
    np.testing.assert_allclose(got, want, rtol=2e-7, atol=2e-7)
