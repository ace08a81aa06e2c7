"""Command-line interface tests."""

import json
import time

import pytest

from softcell.control.cli import main, parse_drives

RAMP_SCENARIO = {
    "cells": [1, 2],
    "n_rb": 100,
    "a3": {"hysteresis_db": 3.0, "time_to_trigger_s": 0.0},
    "drive": {"kind": "gains", "trajectories": [
        {"link_id": "enb1_dl", "points": [[0.0, -48.0]]},
        {"link_id": "enb2_dl", "points": [[0.0, -80.0], [60.0, -30.0]]},
    ]},
    "duration_s": 60.0,
    "seed": 0,
    "clock": "virtual",
}


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "ramp.json"
    path.write_text(json.dumps(RAMP_SCENARIO))
    return path


class TestRun:
    def test_writes_trace_and_events(self, scenario_file, tmp_path, capsys):
        out = tmp_path / "trace.csv"
        assert main(["run", "--scenario", str(scenario_file),
                     "--trace", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "t_s,rsrp_1_db,rsrp_2_db,snr_db,serving,event"
        events = [json.loads(l)
                  for l in (tmp_path / "trace.events.jsonl").read_text().splitlines()]
        assert sum(e["kind"] == "handover" for e in events) == 1
        assert "1 handovers" in capsys.readouterr().out

    def test_seed_override_controls_jitter(self, tmp_path):
        doc = dict(RAMP_SCENARIO, s1_latency=[0.01, 0.02], duration_s=50.0)
        scn = tmp_path / "jitter.json"
        scn.write_text(json.dumps(doc))
        outs = []
        for name, seed in [("a", "5"), ("b", "5"), ("c", "6")]:
            out = tmp_path / f"{name}.csv"
            assert main(["run", "--scenario", str(scn), "--trace", str(out),
                         "--seed", seed]) == 0
            outs.append(out.read_text()
                        + (tmp_path / f"{name}.events.jsonl").read_text())
        assert outs[0] == outs[1]
        assert outs[0] != outs[2]

    def test_realtime_flag_paces_run(self, tmp_path):
        doc = {
            "cells": [1, 2], "n_rb": 6, "duration_s": 0.3,
            "meas_period_s": 0.1,
            "drive": {"kind": "gains", "trajectories": [
                {"link_id": "enb1_dl", "points": [[0.0, -48.0]]},
            ]},
        }
        scn = tmp_path / "tiny.json"
        scn.write_text(json.dumps(doc))
        out = tmp_path / "tiny.csv"
        t0 = time.monotonic()
        assert main(["run", "--scenario", str(scn), "--trace", str(out),
                     "--realtime"]) == 0
        assert time.monotonic() - t0 >= 0.25

    def test_missing_file(self, tmp_path, capsys):
        assert main(["run", "--scenario", str(tmp_path / "nope.json"),
                     "--trace", str(tmp_path / "t.csv")]) == 2
        assert "error" in capsys.readouterr().err

    def test_invalid_scenario(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps(dict(RAMP_SCENARIO, bogus_key=1)))
        assert main(["run", "--scenario", str(bad),
                     "--trace", str(tmp_path / "t.csv")]) == 2
        assert "bogus_key" in capsys.readouterr().err


class TestRates:
    def test_prints_base_and_throttle(self, capsys):
        assert main(["rates", "--nrb", "100"]) == 0
        out = capsys.readouterr().out
        assert "base_sps 30720000" in out
        assert "throttle_sps 23040000" in out

    def test_all_supported_nrb(self, capsys):
        for nrb, base in [(6, 1920000), (15, 3840000), (25, 7680000),
                          (50, 15360000), (75, 23040000), (100, 30720000)]:
            assert main(["rates", "--nrb", str(nrb)]) == 0
            out = capsys.readouterr().out
            assert f"base_sps {base}" in out
            assert f"throttle_sps {int(base * 3 / 4)}" in out

    def test_unsupported_nrb(self, capsys):
        assert main(["rates", "--nrb", "33"]) == 2
        assert "valid values" in capsys.readouterr().err


class TestPaSweep:
    def test_writes_csv(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["bench", "pa-sweep", "--drives=-30:10:5",
                     "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "drive_db,aclr_db,evm_pct,throughput_mbps"
        assert len(lines) == 10
        assert lines[1].startswith("-30.000,")
        first = [float(v) for v in lines[1].split(",")]
        last = [float(v) for v in lines[-1].split(",")]
        assert first[3] == 75.0
        assert last[1] > first[1]

    def test_bad_drive_specs(self, tmp_path, capsys):
        out = str(tmp_path / "s.csv")
        for spec in ["10:0:5", "0:10:-1", "0:10:0", "1:2", "a:b:c", "0:inf:1"]:
            assert main(["bench", "pa-sweep", f"--drives={spec}",
                         "--out", out]) == 2
            assert "error" in capsys.readouterr().err

    def test_parse_drives_inclusive_stop(self):
        assert parse_drives("-30:10:5") == [-30.0 + 5 * k for k in range(9)]
        assert parse_drives("0:1:0.25") == pytest.approx([0, 0.25, 0.5, 0.75, 1.0])
        assert parse_drives("5:5:1") == [5.0]
        # stop just shy of the next step stays excluded
        assert parse_drives("0:9.9:5") == [0.0, 5.0]


class TestParser:
    def test_no_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as info:
            main([])
        assert info.value.code == 2

    def test_unknown_subcommand_exits_2(self):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2
