"""Experiment declarations, the simulation runner, and trace emission."""

from .model import (
    FlightPath,
    GainTrajectory,
    Scenario,
    downlink_id,
    link_ids_for,
    load_scenario,
    pathloss_gain,
    traj_eval,
    uplink_id,
)
from .runner import ScenarioEngine, run_scenario
from .trace import Trace, TraceRecord

__all__ = [
    "GainTrajectory",
    "FlightPath",
    "Scenario",
    "load_scenario",
    "traj_eval",
    "pathloss_gain",
    "downlink_id",
    "uplink_id",
    "link_ids_for",
    "ScenarioEngine",
    "run_scenario",
    "Trace",
    "TraceRecord",
]
