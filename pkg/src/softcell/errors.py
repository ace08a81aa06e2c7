"""Exception types shared across the emulator."""


class EmulatorError(Exception):
    """Base class for softcell errors."""


class AlignmentError(EmulatorError, ValueError):
    """Frames disagree on start index, length, or sample rate."""


class ProtocolError(EmulatorError):
    """A message violates the expected request/reply or S1 choreography."""


class StateError(EmulatorError):
    """An endpoint was driven from a state that does not allow the operation."""


class LinkClosedError(EmulatorError, ConnectionError):
    """The peer endpoint of a link has gone away."""


class LinkTimeoutError(EmulatorError, TimeoutError):
    """A sample request was not answered within the configured timeout."""


class StartupError(EmulatorError):
    """A pipeline was misconfigured and refused to start."""


class ScenarioError(EmulatorError, ValueError):
    """A scenario description failed validation; nothing was run."""
