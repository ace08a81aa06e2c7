"""Scenario declarations: cells, gain drives, flight paths, and the loader.

A scenario drives the per-link gains either directly, through piecewise
linear-in-dB trajectories, or geometrically, through a straight-line flight
between two base stations with log-distance path loss.  The JSON form is
strict: unknown keys anywhere are rejected so a typo cannot silently fall
back to a default.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from ..errors import ScenarioError
from ..iqcore.pilot import PilotSpec
from ..iqcore.rates import LTE_BASE_RATE_HZ
from ..ransim.messages import A3Config, CellConfig, S1Latency

VALID_CLOCKS = ("virtual", "realtime")


def downlink_id(cell_id: int) -> str:
    return f"enb{cell_id}_dl"


def uplink_id(cell_id: int) -> str:
    return f"enb{cell_id}_ul"


def link_ids_for(cell_ids) -> list[str]:
    """All gain-block link ids for a cell list, downlinks first."""
    return [downlink_id(c) for c in cell_ids] + [uplink_id(c) for c in cell_ids]


@dataclass(frozen=True)
class GainTrajectory:
    """Piecewise-linear gain program (in dB) for one link.

    Before the first point the first value holds; after the last point the
    last value holds.
    """

    link_id: str
    points: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(t), float(g)) for t, g in self.points)
        if not pts:
            raise ScenarioError(f"trajectory for {self.link_id} has no points")
        times = [t for t, _ in pts]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ScenarioError(
                f"trajectory for {self.link_id} must have strictly increasing "
                f"times, got {times}"
            )
        object.__setattr__(self, "points", pts)

    def gain_db_at(self, t: float) -> float:
        times = [p[0] for p in self.points]
        values = [p[1] for p in self.points]
        return float(np.interp(t, times, values))


def traj_eval(traj: GainTrajectory, t: float) -> float:
    """Linear gain at time t: ``10 ** (gain_db / 20)`` of the interpolation."""
    return 10.0 ** (traj.gain_db_at(t) / 20.0)


@dataclass(frozen=True)
class FlightPath:
    """Straight flight between two base stations at fixed altitude.

    The craft starts above ``enb_positions[0]``, flies toward
    ``enb_positions[1]`` at ``speed_mps``, and holds position past the far
    end.  ``cell_ids`` pairs each position with the cell it radiates.
    Received gain follows a log-distance model,
    ``gain_db = tx_cal_db - (pl0_db + 10 * exponent * log10(d / d0_m))``,
    with the 3-D distance floored at ``d0_m``.
    """

    cell_ids: Tuple[int, int]
    enb_positions: Tuple[Tuple[float, float, float], Tuple[float, float, float]]
    altitude_m: float
    speed_mps: float
    pl0_db: float = 40.0
    d0_m: float = 1.0
    exponent: float = 2.7
    tx_cal_db: float = 54.0

    def __post_init__(self):
        if len(self.cell_ids) != 2 or len(self.enb_positions) != 2:
            raise ScenarioError("a flight path needs exactly two cells")
        object.__setattr__(self, "cell_ids", tuple(int(c) for c in self.cell_ids))
        object.__setattr__(
            self,
            "enb_positions",
            tuple(tuple(float(x) for x in p) for p in self.enb_positions),
        )
        if any(len(p) != 3 for p in self.enb_positions):
            raise ScenarioError("base station positions must be 3-D points")
        if self.horizontal_span_m <= 0:
            raise ScenarioError("base stations must be horizontally separated")
        if self.speed_mps <= 0:
            raise ScenarioError(f"speed_mps must be positive, got {self.speed_mps}")
        if self.exponent < 1:
            raise ScenarioError(f"exponent must be >= 1, got {self.exponent}")
        if self.d0_m <= 0:
            raise ScenarioError(f"d0_m must be positive, got {self.d0_m}")

    @property
    def horizontal_span_m(self) -> float:
        a, b = self.enb_positions
        return math.hypot(b[0] - a[0], b[1] - a[1])

    @property
    def flight_duration_s(self) -> float:
        return self.horizontal_span_m / self.speed_mps

    def position_at(self, t: float) -> Tuple[float, float, float]:
        a, b = self.enb_positions
        frac = min(max(self.speed_mps * t / self.horizontal_span_m, 0.0), 1.0)
        return (
            a[0] + (b[0] - a[0]) * frac,
            a[1] + (b[1] - a[1]) * frac,
            self.altitude_m,
        )

    def distance_to(self, cell_id: int, t: float) -> float:
        try:
            idx = self.cell_ids.index(cell_id)
        except ValueError:
            raise ScenarioError(
                f"cell {cell_id} is not part of this flight; cells: "
                f"{self.cell_ids}"
            ) from None
        p = self.position_at(t)
        e = self.enb_positions[idx]
        d = math.dist(p, e)
        return max(d, self.d0_m)

    def gain_db_at(self, cell_id: int, t: float) -> float:
        d = self.distance_to(cell_id, t)
        pl_db = self.pl0_db + 10.0 * self.exponent * math.log10(d / self.d0_m)
        return self.tx_cal_db - pl_db


def pathloss_gain(path: FlightPath, cell_id: int, t: float) -> float:
    """Linear link gain for one cell at flight time t."""
    return 10.0 ** (path.gain_db_at(cell_id, t) / 20.0)


Drive = Union[Tuple[GainTrajectory, ...], FlightPath]


@dataclass(frozen=True)
class Scenario:
    """A complete experiment declaration; validated on construction."""

    cells: Tuple[CellConfig, ...]
    n_rb: int
    drive: Drive
    duration_s: float
    a3: A3Config = A3Config()
    s1_latency: S1Latency = S1Latency()
    seed: int = 0
    clock: str = "virtual"
    meas_period_s: float = 0.1
    # Post-command service interruption; zero keeps measuring through the
    # switch.  Not part of the JSON schema.
    gap_s: float = 0.0

    def __post_init__(self):
        if not isinstance(self.drive, FlightPath):
            object.__setattr__(self, "drive", tuple(self.drive))
        object.__setattr__(self, "cells", tuple(self.cells))
        self.validate()

    def validate(self) -> None:
        if len(self.cells) < 2:
            raise ScenarioError("a scenario needs at least two cells")
        ids = [c.cell_id for c in self.cells]
        if len(set(ids)) != len(ids):
            raise ScenarioError(f"cell ids must be unique, got {ids}")
        offsets = [c.pilot.comb_offset for c in self.cells]
        if len(set(offsets)) != len(offsets):
            raise ScenarioError(f"pilot comb offsets must be unique, got {offsets}")
        first = self.cells[0].pilot
        for c in self.cells[1:]:
            if not first.same_comb_family(c.pilot):
                raise ScenarioError(
                    "all cell pilots must share fft_len, comb_spacing, and "
                    "tone_count"
                )
        if self.n_rb not in LTE_BASE_RATE_HZ:
            raise ScenarioError(
                f"unsupported n_rb {self.n_rb}; valid values: "
                f"{sorted(LTE_BASE_RATE_HZ)}"
            )
        if not self.duration_s > 0:
            raise ScenarioError(f"duration_s must be positive, got {self.duration_s}")
        if self.clock not in VALID_CLOCKS:
            raise ScenarioError(
                f"clock must be one of {VALID_CLOCKS}, got {self.clock!r}"
            )
        if not self.meas_period_s > 0:
            raise ScenarioError(
                f"meas_period_s must be positive, got {self.meas_period_s}"
            )
        if self.gap_s < 0:
            raise ScenarioError(f"gap_s must be >= 0, got {self.gap_s}")
        if int(self.seed) != self.seed:
            raise ScenarioError(f"seed must be an integer, got {self.seed!r}")
        valid_links = set(link_ids_for(ids))
        if isinstance(self.drive, FlightPath):
            if set(self.drive.cell_ids) != set(ids):
                raise ScenarioError(
                    f"flight cells {self.drive.cell_ids} do not match scenario "
                    f"cells {ids}"
                )
        else:
            if not self.drive:
                raise ScenarioError("gain drive needs at least one trajectory")
            for traj in self.drive:
                if traj.link_id not in valid_links:
                    raise ScenarioError(
                        f"trajectory references unknown link {traj.link_id!r}; "
                        f"valid links: {sorted(valid_links)}"
                    )
            driven = [t.link_id for t in self.drive]
            if len(set(driven)) != len(driven):
                raise ScenarioError(f"duplicate trajectory for a link in {driven}")

    @property
    def cell_ids(self) -> list[int]:
        return [c.cell_id for c in self.cells]

    @property
    def link_ids(self) -> list[str]:
        return link_ids_for(self.cell_ids)


# ---------------------------------------------------------------------------
# JSON loading

_TOP_KEYS = {
    "cells", "n_rb", "a3", "s1_latency", "drive", "duration_s", "seed",
    "clock", "meas_period_s",
}
_REQUIRED_KEYS = {"cells", "n_rb", "drive", "duration_s"}


def _reject_unknown(obj: dict, allowed: set, where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ScenarioError(
            f"unknown {where} key(s) {sorted(unknown)}; allowed: {sorted(allowed)}"
        )


def _load_cells(raw) -> tuple:
    if not isinstance(raw, list) or not raw:
        raise ScenarioError("cells must be a non-empty list")
    cells = []
    for position, entry in enumerate(raw):
        if isinstance(entry, int):
            entry = {"cell_id": entry}
        if not isinstance(entry, dict):
            raise ScenarioError(f"cell entry {entry!r} must be an object or id")
        _reject_unknown(entry, {"cell_id", "pilot"}, "cell")
        if "cell_id" not in entry:
            raise ScenarioError(f"cell entry {entry!r} lacks cell_id")
        pilot_kw = dict(entry.get("pilot", {}))
        _reject_unknown(
            pilot_kw,
            {"fft_len", "comb_spacing", "comb_offset", "tone_count"},
            "pilot",
        )
        # Pilot offsets default to the list position, so the cells listed
        # first get the same comb placement in a mirrored scenario.
        pilot_kw.setdefault("comb_offset", position)
        cells.append(CellConfig(cell_id=int(entry["cell_id"]),
                                pilot=PilotSpec(**pilot_kw)))
    return tuple(cells)


def _load_drive(raw, cell_ids) -> Drive:
    if not isinstance(raw, dict) or "kind" not in raw:
        raise ScenarioError('drive must be an object with a "kind" key')
    kind = raw["kind"]
    if kind == "gains":
        _reject_unknown(raw, {"kind", "trajectories"}, "drive")
        trajs = raw.get("trajectories")
        if not isinstance(trajs, list) or not trajs:
            raise ScenarioError("gains drive needs a non-empty trajectories list")
        out = []
        for entry in trajs:
            _reject_unknown(entry, {"link_id", "points"}, "trajectory")
            if "link_id" not in entry or "points" not in entry:
                raise ScenarioError(
                    f"trajectory {entry!r} needs link_id and points"
                )
            out.append(GainTrajectory(
                link_id=str(entry["link_id"]),
                points=tuple((p[0], p[1]) for p in entry["points"]),
            ))
        return tuple(out)
    if kind == "flight":
        _reject_unknown(
            raw,
            {"kind", "enb_positions", "altitude_m", "speed_mps", "pathloss",
             "tx_cal_db"},
            "drive",
        )
        for key in ("enb_positions", "altitude_m", "speed_mps"):
            if key not in raw:
                raise ScenarioError(f"flight drive lacks {key}")
        pl = dict(raw.get("pathloss", {}))
        _reject_unknown(pl, {"pl0_db", "exponent", "d0_m"}, "pathloss")
        kwargs = {}
        if "tx_cal_db" in raw:
            kwargs["tx_cal_db"] = float(raw["tx_cal_db"])
        return FlightPath(
            cell_ids=tuple(cell_ids[:2]),
            enb_positions=tuple(tuple(p) for p in raw["enb_positions"]),
            altitude_m=float(raw["altitude_m"]),
            speed_mps=float(raw["speed_mps"]),
            **{k: float(v) for k, v in pl.items()},
            **kwargs,
        )
    raise ScenarioError(f'unknown drive kind {kind!r}; expected "gains" or "flight"')


def _load_latency(raw) -> S1Latency:
    if isinstance(raw, (list, tuple)):
        if len(raw) != 2:
            raise ScenarioError(f"s1_latency list must be [fixed_s, jitter_s], got {raw}")
        return S1Latency(fixed_s=float(raw[0]), jitter_s=float(raw[1]))
    if isinstance(raw, dict):
        _reject_unknown(raw, {"fixed_s", "jitter_s"}, "s1_latency")
        return S1Latency(fixed_s=float(raw.get("fixed_s", 0.0)),
                         jitter_s=float(raw.get("jitter_s", 0.0)))
    raise ScenarioError(f"s1_latency must be a pair or object, got {raw!r}")


def load_scenario(source) -> Scenario:
    """Build a Scenario from a JSON file path, JSON text, or a dict.

    Unknown keys at any level raise :class:`ScenarioError` with the allowed
    set, and validation failures surface before anything runs.
    """
    if isinstance(source, Path):
        data = json.loads(source.read_text(encoding="utf-8"))
    elif isinstance(source, str):
        stripped = source.lstrip()
        if stripped.startswith("{"):
            data = json.loads(source)
        else:
            data = json.loads(Path(source).read_text(encoding="utf-8"))
    elif isinstance(source, dict):
        data = source
    else:
        raise ScenarioError(f"cannot load a scenario from {type(source).__name__}")
    if not isinstance(data, dict):
        raise ScenarioError("scenario JSON must be an object")
    _reject_unknown(data, _TOP_KEYS, "scenario")
    missing = _REQUIRED_KEYS - set(data)
    if missing:
        raise ScenarioError(f"scenario lacks required key(s) {sorted(missing)}")

    cells = _load_cells(data["cells"])
    cell_ids = [c.cell_id for c in cells]

    a3_raw = dict(data.get("a3", {}))
    _reject_unknown(
        a3_raw, {"hysteresis_db", "time_to_trigger_s", "meas_period_s"}, "a3"
    )
    try:
        a3 = A3Config(**{k: float(v) for k, v in a3_raw.items()})
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None
    # The top-level cadence wins when both are given.
    meas_period = float(data.get("meas_period_s", a3.meas_period_s))
    a3 = replace(a3, meas_period_s=meas_period)

    try:
        latency = _load_latency(data.get("s1_latency", {}))
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None

    try:
        return Scenario(
            cells=cells,
            n_rb=int(data["n_rb"]),
            drive=_load_drive(data["drive"], cell_ids),
            duration_s=float(data["duration_s"]),
            a3=a3,
            s1_latency=latency,
            seed=int(data.get("seed", 0)),
            clock=str(data.get("clock", "virtual")),
            meas_period_s=meas_period,
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(str(exc)) from None
