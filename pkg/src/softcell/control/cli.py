"""Command-line entry points.

    softcell run   --scenario s.json --trace out.csv [--realtime] [--seed N]
    softcell serve --port 8000 --scenario s.json [--host H] [--static DIR]
    softcell bench pa-sweep --drives -30:10:5 --out sweep.csv
    softcell rates --nrb 100

Exit status is 0 on success and 2 on validation failures, matching the
code argparse itself uses for bad arguments.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import replace
from pathlib import Path

from ..bench import PaParams, default_a_sat, make_multitone, pa_sweep, sweep_csv
from ..errors import ScenarioError
from ..iqcore.rates import base_rate, throttle_rate
from ..scenario import ScenarioEngine, load_scenario

EXIT_OK = 0
EXIT_INVALID = 2


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_INVALID


def _load(path: str):
    return load_scenario(Path(path))


def _cmd_run(args) -> int:
    try:
        scenario = _load(args.scenario)
    except (ScenarioError, OSError) as exc:
        return _fail(str(exc))
    if args.seed is not None:
        scenario = replace(scenario, seed=args.seed)
    if args.realtime:
        scenario = replace(scenario, clock="realtime")
    engine = ScenarioEngine(scenario)
    trace = engine.run()
    csv_path = Path(args.trace)
    trace.write(csv_path)
    events_path = csv_path.with_suffix(".events.jsonl")
    print(f"wrote {csv_path} ({len(trace.records)} rows) and "
          f"{events_path} ({len(trace.events)} events), "
          f"{len(trace.handovers)} handovers")
    return EXIT_OK


def _default_static() -> Path | None:
    # Editable checkouts serve the dashboard build next to the package.
    dist = Path(__file__).resolve().parents[3] / "frontend" / "dist"
    return dist if dist.is_dir() else None


def _cmd_serve(args) -> int:
    try:
        scenario = _load(args.scenario)
    except (ScenarioError, OSError) as exc:
        return _fail(str(exc))
    static_dir = Path(args.static) if args.static else _default_static()
    if args.static and not Path(args.static).is_dir():
        return _fail(f"static dir {args.static} does not exist")

    from .server import create_app  # deferred: fastapi import is slow

    app = create_app(scenario=scenario, static_dir=static_dir,
                     telemetry_period_s=args.telemetry_period)
    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def parse_drives(text: str) -> list[float]:
    """Expand "start:stop:step" (dB, stop inclusive) into a drive list."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"drives must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"drives must be numeric, got {text!r}") from None
    if not all(math.isfinite(v) for v in (start, stop, step)):
        raise ValueError("drive bounds must be finite")
    if step <= 0:
        raise ValueError(f"drive step must be positive, got {step}")
    if stop < start:
        raise ValueError(f"drive stop {stop} is below start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def _cmd_pa_sweep(args) -> int:
    try:
        drives = parse_drives(args.drives)
    except ValueError as exc:
        return _fail(str(exc))
    stimulus = make_multitone()
    pa = PaParams(a_sat=default_a_sat(stimulus, 0.0, drives[0]))
    rows = pa_sweep(drives, pa, stimulus)
    out = Path(args.out)
    out.write_text(sweep_csv(rows))
    print(f"wrote {out} ({len(rows)} drives, "
          f"{drives[0]:g} to {drives[-1]:g} dB)")
    return EXIT_OK


def _cmd_rates(args) -> int:
    try:
        base = base_rate(args.nrb)
    except ValueError as exc:
        return _fail(str(exc))
    print(f"n_rb {args.nrb}")
    print(f"base_sps {base:.0f}")
    print(f"throttle_sps {throttle_rate(args.nrb):.0f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="softcell",
        description="Virtual RF channel emulator and S1 handover harness.")
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run a scenario and write its trace")
    run_p.add_argument("--scenario", required=True, help="scenario JSON file")
    run_p.add_argument("--trace", required=True, help="output CSV path")
    run_p.add_argument("--realtime", action="store_true",
                       help="pace the run on the wall clock")
    run_p.add_argument("--seed", type=int, default=None,
                       help="override the scenario seed")
    run_p.set_defaults(func=_cmd_run)

    serve_p = sub.add_parser("serve", help="serve the live control API")
    serve_p.add_argument("--port", type=int, required=True)
    serve_p.add_argument("--scenario", required=True,
                         help="scenario JSON file, started on boot")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--static", default=None,
                         help="dashboard build directory to serve at /")
    serve_p.add_argument("--telemetry-period", type=float, default=0.1,
                         help="telemetry cadence in seconds")
    serve_p.set_defaults(func=_cmd_serve)

    bench_p = sub.add_parser("bench", help="amplifier benchmark commands")
    bench_sub = bench_p.add_subparsers(dest="bench_command", required=True)
    sweep_p = bench_sub.add_parser("pa-sweep",
                                   help="drive sweep over the amplifier model")
    sweep_p.add_argument("--drives", required=True,
                         help="start:stop:step in dB, stop inclusive")
    sweep_p.add_argument("--out", required=True, help="output CSV path")
    sweep_p.set_defaults(func=_cmd_pa_sweep)

    rates_p = sub.add_parser("rates", help="print LTE sample rates")
    rates_p.add_argument("--nrb", type=int, required=True,
                         help="resource block count")
    rates_p.set_defaults(func=_cmd_rates)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
