"""End-to-end acceptance checks.

Each test covers one headline behavior of the package and prints a
single PASS or FAIL line naming it, in addition to the normal pytest
outcome.  Tolerances are part of each check's definition; nothing here
is tuned to implementation internals.
"""

import contextlib
import json
import subprocess
import sys
import threading
import time

import numpy as np
import pytest

from softcell.bench import PaParams, default_a_sat, make_multitone, pa_sweep
from softcell.iqcore import (
    DEFAULT_CAL_DB,
    IqFrame,
    PilotSpec,
    estimate_rsrp,
    throttle_rate,
)
from softcell.iqcore.pilot import pilot_slice
from softcell.ransim import HANDOVER_SEQUENCE
from softcell.scenario import run_scenario
from softcell.transport import Bridge, PaceStage, SampleChannel, serve_samples


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def _criterion(name):
        try:
            yield
        except BaseException:
            with capsys.disabled():
                print(f"FAIL  {name}")
            raise
        with capsys.disabled():
            print(f"PASS  {name}")

    return _criterion


def ramp_doc(mirrored=False, **overrides):
    """Serving cell pinned at RSRP -68, neighbor ramping -80 to -30 dB."""
    cells = [2, 1] if mirrored else [1, 2]
    doc = {
        "cells": cells,
        "n_rb": 100,
        "a3": {"hysteresis_db": 3.0, "time_to_trigger_s": 0.0},
        "drive": {"kind": "gains", "trajectories": [
            {"link_id": f"enb{cells[0]}_dl", "points": [[0.0, -48.0]]},
            {"link_id": f"enb{cells[1]}_dl",
             "points": [[0.0, -80.0], [60.0, -30.0]]},
        ]},
        "duration_s": 60.0,
        "seed": 0,
        "clock": "virtual",
        "meas_period_s": 0.1,
    }
    doc.update(overrides)
    return doc


EXPECTED_EVENT_KINDS = [k.value for k in HANDOVER_SEQUENCE] + ["handover"]


def test_single_handover_with_bounded_overshoot(criterion):
    with criterion("ramp scenario: one handover, trigger within one "
                   "measurement period of the 3 dB point, fast virtual run"):
        t0 = time.monotonic()
        trace = run_scenario(ramp_doc())
        runtime = time.monotonic() - t0
        assert runtime < 10.0

        handovers = trace.handovers
        assert len(handovers) == 1
        assert handovers[0]["from"] == 1 and handovers[0]["to"] == 2

        report = next(e for e in trace.events
                      if e["kind"] == "MeasurementReport")
        row = next(r for r in trace.records if r.t_s == report["t_s"])
        delta = row.rsrp_db[2] - row.rsrp_db[1]
        slope_db_per_s = 50.0 / 60.0
        assert 3.0 < delta <= 3.0 + slope_db_per_s * 0.1 + 1e-9

        # zero ping-pong: serving flips once and stays flipped
        serving_changes = sum(
            a.serving != b.serving
            for a, b in zip(trace.records, trace.records[1:]))
        assert serving_changes == 1
        assert trace.records[-1].serving == 2


def test_mirrored_scenario_is_identical_under_relabeling(criterion):
    with criterion("mirrored scenario: trace identical under swapping "
                   "the two cell ids"):
        orig = run_scenario(ramp_doc())
        mirr = run_scenario(ramp_doc(mirrored=True))
        relabel = {1: 2, 2: 1}

        assert len(orig.records) == len(mirr.records)
        for o, m in zip(orig.records, mirr.records):
            assert o.t_s == m.t_s
            assert o.rsrp_db[1] == m.rsrp_db[2]
            assert o.rsrp_db[2] == m.rsrp_db[1]
            assert o.snr_db == m.snr_db
            assert relabel[o.serving] == m.serving
            assert o.event == m.event

        assert len(orig.events) == len(mirr.events)
        for oe, me in zip(orig.events, mirr.events):
            assert oe["kind"] == me["kind"]
            assert oe["t_s"] == me["t_s"]
            for key in ("source", "target", "from", "to"):
                if key in oe:
                    assert relabel[oe[key]] == me[key]

        # both hand over at the same 3 dB offset, in opposite directions
        assert mirr.handovers[0]["from"] == 2
        assert mirr.handovers[0]["to"] == 1
        assert mirr.handovers[0]["t_s"] == orig.handovers[0]["t_s"]


def test_realtime_link_throttles_to_lte_rate(criterion):
    with criterion("realtime pipeline delivers 23.04 Msps within 1 percent "
                   "and the rates command agrees"):
        out = subprocess.run(
            [sys.executable, "-m", "softcell.control.cli",
             "rates", "--nrb", "100"],
            capture_output=True, text=True, check=True).stdout
        printed = {}
        for line in out.splitlines():
            key, value = line.split()
            printed[key] = float(value)
        assert printed["base_sps"] == 30.72e6
        assert printed["throttle_sps"] == 23.04e6

        fs = throttle_rate(100)
        chunk = 1 << 16
        source = SampleChannel(fs, capacity_s=0.25)
        sink = SampleChannel(fs, capacity_s=0.25)
        block = np.zeros(chunk, dtype=np.complex128)

        def frames():
            start = 0
            while True:
                yield IqFrame(start, fs, block)
                start += chunk

        producer = threading.Thread(
            target=serve_samples, args=(source, frames()), daemon=True)
        bridge = Bridge(source, sink, [PaceStage(fs)], chunk_samples=chunk)
        producer.start()
        bridge.start()
        try:
            # warm up past the initial buffer fill, then measure 2 s
            t_warm = time.monotonic() + 0.5
            while time.monotonic() < t_warm:
                sink.pop(chunk)
            delivered = 0
            t0 = time.monotonic()
            while True:
                delivered += len(sink.pop(chunk))
                elapsed = time.monotonic() - t0
                if elapsed >= 2.0:
                    break
            rate = delivered / elapsed
            assert abs(rate - fs) / fs < 0.01, f"measured {rate:.0f} sps"
        finally:
            bridge.stop()


def test_rsrp_estimate_tracks_programmed_gain(criterion):
    with criterion("rsrp follows 20*log10(gain) - 20 within 1e-6 dB "
                   "noiseless and 0.1 dB at 30 dB snr, interferer active"):
        serving = PilotSpec(comb_offset=0)
        interferer = PilotSpec(comb_offset=1)
        cells = {1: serving, 2: interferer}
        fs = throttle_rate(100)
        start = 1_400_000_000
        window = serving.fft_len
        base_s = pilot_slice(serving, start, window)
        base_i = pilot_slice(interferer, start, window)
        rng = np.random.default_rng(2026)
        gains = np.logspace(-4, 0, 50)

        worst_clean = 0.0
        worst_noisy = 0.0
        for g in gains:
            clean = g * base_s + 0.5 * base_i
            expected = 20.0 * np.log10(g) + DEFAULT_CAL_DB
            got = estimate_rsrp(IqFrame(start, fs, clean), cells)[1]
            worst_clean = max(worst_clean, abs(got - expected))

            p_signal = g**2 * float(np.mean(np.abs(base_s) ** 2))
            sigma2 = p_signal / 10 ** (30 / 10)
            noise = rng.normal(scale=np.sqrt(sigma2 / 2), size=window) \
                + 1j * rng.normal(scale=np.sqrt(sigma2 / 2), size=window)
            noisy = estimate_rsrp(IqFrame(start, fs, clean + noise), cells)[1]
            worst_noisy = max(worst_noisy, abs(noisy - expected))

        assert worst_clean < 1e-6, f"worst noiseless error {worst_clean:.3g} dB"
        assert worst_noisy < 0.1, f"worst noisy error {worst_noisy:.3g} dB"


def test_s1_choreography_over_randomized_ramps(criterion):
    with criterion("100 seeded ramp scenarios: exact message order, exactly "
                   "one handover, zero ping-pong"):
        master = np.random.default_rng(20260823)
        for i in range(100):
            serving_db = master.uniform(-60.0, -40.0)
            below = master.uniform(5.0, 20.0)
            slope = master.uniform(1.5, 3.5)
            hyst = master.uniform(1.0, 6.0)
            ttt = float(master.choice([0.0, 0.1, 0.2, 0.3, 0.4, 0.5]))
            cross_t = (below + hyst) / slope
            duration = cross_t + ttt + master.uniform(2.0, 4.0)
            fixed = master.uniform(0.0, 0.08)
            jitter = float(master.choice([0.0, 0.03]))
            doc = {
                "cells": [1, 2],
                "n_rb": int(master.choice([6, 15, 25, 50, 75, 100])),
                "a3": {"hysteresis_db": hyst, "time_to_trigger_s": ttt},
                "s1_latency": [fixed, jitter],
                "drive": {"kind": "gains", "trajectories": [
                    {"link_id": "enb1_dl", "points": [[0.0, serving_db]]},
                    {"link_id": "enb2_dl", "points": [
                        [0.0, serving_db - below],
                        [duration, serving_db - below + slope * duration]]},
                ]},
                "duration_s": round(duration, 3),
                "seed": i,
            }
            trace = run_scenario(doc)
            kinds = [e["kind"] for e in trace.events]
            assert kinds == EXPECTED_EVENT_KINDS, f"scenario {i}: {kinds}"
            assert len(trace.handovers) == 1, f"scenario {i}"
            flips = sum(a.serving != b.serving
                        for a, b in zip(trace.records, trace.records[1:]))
            assert flips == 1, f"scenario {i} ping-ponged"


def flight_doc(reverse=False):
    positions = {1: [0.0, 0.0, 0.0], 2: [525.0, 0.0, 0.0]}
    cells = [2, 1] if reverse else [1, 2]
    return {
        "cells": cells,
        "n_rb": 50,
        "a3": {"hysteresis_db": 3.0, "time_to_trigger_s": 0.5},
        "drive": {"kind": "flight",
                  "enb_positions": [positions[c] for c in cells],
                  "altitude_m": 45.0,
                  "speed_mps": 10.0},
        "duration_s": 54.0,
        "seed": 0,
    }


def test_flight_trigger_lags_crossover_both_directions(criterion):
    with criterion("flight between stations 525 m apart at 45 m altitude: "
                   "handover initiates past the midpoint in each direction"):
        speed = 10.0
        crossover_x = 525.0 / 2
        crossover_t = crossover_x / speed

        for reverse in (False, True):
            trace = run_scenario(flight_doc(reverse))
            assert len(trace.handovers) == 1
            expected = (2, 1) if reverse else (1, 2)
            ho = trace.handovers[0]
            assert (ho["from"], ho["to"]) == expected

            report_t = next(e["t_s"] for e in trace.events
                            if e["kind"] == "MeasurementReport")
            assert report_t > crossover_t
            travelled = speed * report_t
            if reverse:
                assert 525.0 - travelled < crossover_x
            else:
                assert travelled > crossover_x


def test_pa_sweep_distortion_properties(criterion):
    with criterion("nine-point amplifier sweep: aclr never falls, throughput "
                   "never rises, clean end at 75 Mbps, some drive below 67.5"):
        stimulus = make_multitone()
        pa = PaParams(a_sat=default_a_sat(stimulus, 0.0, -30.0))
        drives = [-30.0 + 5.0 * k for k in range(9)]
        rows = pa_sweep(drives, pa, stimulus)

        assert len(rows) >= 8
        aclrs = [r.aclr_db for r in rows]
        thr = [r.throughput_mbps for r in rows]
        assert all(b >= a for a, b in zip(aclrs, aclrs[1:]))
        assert all(b <= a for a, b in zip(thr, thr[1:]))
        assert rows[0].throughput_mbps == 75.0
        assert any(t < 67.5 for t in thr)


def test_trace_reruns_are_byte_identical(criterion):
    with criterion("same seed, same scenario: trace csv and event log "
                   "match byte for byte across runs"):
        doc = ramp_doc(duration_s=30.0, seed=42, s1_latency=[0.02, 0.03])
        doc["drive"]["trajectories"][1]["points"] = [[0.0, -80.0], [30.0, -30.0]]
        first = run_scenario(doc)
        second = run_scenario(doc)
        assert first.to_csv() == second.to_csv()
        assert first.to_events_jsonl() == second.to_events_jsonl()
        assert len(first.handovers) == 1
        # and the serialized forms are stable end to end
        assert json.loads(first.to_events_jsonl().splitlines()[-1])["kind"] \
            == "handover"
