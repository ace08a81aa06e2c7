"""Sample transport: buffered in-process links, pipelines, and wire adapters.

The transfer model is pull-based.  A provider fills a bounded buffer and a
consumer drains it with explicit sample requests; a request for ``n`` samples
is answered with ``min(n, buffered)`` samples, never zero, blocking while the
buffer is empty.  The same contract is exposed over TCP (:mod:`.tcp`) and,
when pyzmq is installed, over a ZeroMQ REQ/REP pair (:mod:`.zmq_adapter`).
"""

from .link import (
    DEFAULT_CAPACITY_S,
    DEFAULT_TIMEOUT_S,
    InProcLink,
    SampleChannel,
    request_samples,
    serve_samples,
)
from .bridge import (
    AwgnStage,
    Bridge,
    GainStage,
    PaceStage,
    TapStage,
)
from .tcp import TcpSampleClient, TcpSampleServer

__all__ = [
    "DEFAULT_CAPACITY_S",
    "DEFAULT_TIMEOUT_S",
    "SampleChannel",
    "InProcLink",
    "serve_samples",
    "request_samples",
    "Bridge",
    "GainStage",
    "AwgnStage",
    "PaceStage",
    "TapStage",
    "TcpSampleServer",
    "TcpSampleClient",
]
