"""softcell: a virtual RF channel emulator and LTE S1 handover lab.

The package simulates the classic two-eNB / one-UE handover bench entirely in
software: complex-baseband links with programmable gains, LTE-rate throttling,
pilot-based RSRP/SNR measurement, an A3-triggered S1 handover state machine,
UAV path-loss flight scenarios, and a PA-saturation benchmarking suite.  A
control server (``softcell serve``) exposes the running experiment to a web
dashboard for live steering.
"""

__version__ = "0.1.0"
