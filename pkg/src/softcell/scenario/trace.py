"""Trace records and their CSV / JSON-lines serializations.

The CSV column order is fixed: ``t_s``, one RSRP column per cell in
scenario order, ``snr_db``, ``serving``, ``event``.  Floats carry exactly
three decimals so two identical runs serialize byte-for-byte identically.
Event rows repeat the most recent measurement values; the full structured
records go to the JSON-lines stream.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional


def _fmt(value: float) -> str:
    out = f"{value:.3f}"
    # Avoid the "-0.000" artifact for tiny negatives.
    return "0.000" if out == "-0.000" else out


@dataclass(frozen=True)
class TraceRecord:
    """One trace row: a measurement, or an event echoing the last one."""

    t_s: float
    rsrp_db: Mapping[int, float]
    snr_db: float
    serving: int
    event: str = ""


class Trace:
    """Ordered trace rows plus the structured event records behind them."""

    def __init__(self, cell_ids):
        self.cell_ids = list(cell_ids)
        self.records: list[TraceRecord] = []
        self.events: list[dict] = []

    def add(self, record: TraceRecord) -> None:
        if self.records and record.t_s < self.records[-1].t_s - 1e-12:
            raise ValueError(
                f"trace timestamps must be non-decreasing; {record.t_s} after "
                f"{self.records[-1].t_s}"
            )
        missing = [c for c in self.cell_ids if c not in record.rsrp_db]
        if missing:
            raise ValueError(f"record lacks RSRP for cell(s) {missing}")
        self.records.append(record)

    def add_event(self, record: TraceRecord, payload: dict) -> None:
        """An event row plus its structured mirror."""
        self.add(record)
        self.events.append(dict(payload))

    @property
    def handovers(self) -> list[dict]:
        return [e for e in self.events if e.get("kind") == "handover"]

    def csv_header(self) -> str:
        rsrp_cols = ",".join(f"rsrp_{c}_db" for c in self.cell_ids)
        return f"t_s,{rsrp_cols},snr_db,serving,event"

    def csv_rows(self):
        yield self.csv_header()
        for r in self.records:
            rsrp = ",".join(_fmt(r.rsrp_db[c]) for c in self.cell_ids)
            yield (
                f"{_fmt(r.t_s)},{rsrp},{_fmt(r.snr_db)},{r.serving},{r.event}"
            )

    def to_csv(self) -> str:
        buf = io.StringIO()
        for row in self.csv_rows():
            buf.write(row)
            buf.write("\n")
        return buf.getvalue()

    def to_events_jsonl(self) -> str:
        buf = io.StringIO()
        for event in self.events:
            buf.write(json.dumps(event, separators=(", ", ": ")))
            buf.write("\n")
        return buf.getvalue()

    def write(self, csv_path, events_path: Optional[str] = None) -> None:
        csv_path = Path(csv_path)
        csv_path.write_text(self.to_csv(), encoding="utf-8")
        if events_path is None:
            events_path = csv_path.with_suffix(".events.jsonl")
        Path(events_path).write_text(self.to_events_jsonl(), encoding="utf-8")
