"""Command-line front end emitting deterministic CSV artifacts.

Subcommands: trace, coverage, aoa, pdp, design-panel, validate.  Every output
starts with a header row naming columns and units; ``# key=value`` comment
lines may follow the header.  Exit codes: 0 success, 2 usage or unknown
scenario, 3 parse/validation failure, 4 internal error.
"""

from __future__ import annotations

import argparse
import cmath
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from .antenna import isotropic
from .channel import pdp as make_pdp, synthesize
from .geometry import bearing_deg, validate_scene
from .raytrace import aoa_sweep, coverage_sweep, find_paths, make_term, path_gain
from .reflectarray import PanelMode, design_panel
from .scenarios import (
    BUILTIN_NAMES,
    Scenario,
    ScenarioError,
    ScenarioFormatError,
    ScenarioValidationError,
    Terminal,
    builtin_scenario,
    load,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_INTERNAL = 4


class _UsageError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


def _write_output(lines: list[str], out: Optional[str]) -> None:
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def _resolve_scenario(args) -> Scenario:
    name = args.scenario
    if name in BUILTIN_NAMES:
        return builtin_scenario(name, getattr(args, "variant", None), getattr(args, "case", None))
    path = Path(name)
    if not path.exists():
        raise _UsageError(f"unknown scenario {name!r} (not a builtin: {', '.join(BUILTIN_NAMES)}; not a file)")
    return load(path)


def _terminal_orientation(term: Terminal, peer_position) -> float:
    """Fixed orientation when present, otherwise aim at the peer terminal."""
    if term.orientation is not None:
        return term.orientation.azimuth_deg
    return bearing_deg(term.position, peer_position)


def _pick_rx(scenario: Scenario, label: Optional[str]) -> Terminal:
    if label is None:
        return scenario.rx[0]
    try:
        return scenario.rx_by_label(label)
    except KeyError as exc:
        raise _UsageError(str(exc)) from exc


def _patterns(args, term: Terminal):
    return isotropic() if getattr(args, "isotropic", False) else term.pattern


def cmd_trace(args) -> int:
    scenario = _resolve_scenario(args)
    tx = scenario.tx[0]
    rx = _pick_rx(scenario, args.position)
    scene = scenario.scene
    paths = find_paths(scene, tx.position, rx.position, args.max_order)
    tx_az = _terminal_orientation(tx, rx.position)
    rx_az = _terminal_orientation(rx, tx.position)
    fc = scene.frequency_plan.fc_ghz
    lines = ["path_id,order,length_m,delay_ns,dep_az_deg,arr_az_deg,gain_db,phase_deg"]
    lines.append(f"# scenario={scenario.name} tx={tx.label} rx={rx.label} fc_ghz={_fmt(fc)}")
    for i, p in enumerate(paths):
        g = path_gain(p, scene, _patterns(args, tx), tx_az, _patterns(args, rx), rx_az, fc)
        gain_db = -float("inf") if g == 0 else 20.0 * math.log10(abs(g))
        phase = math.degrees(cmath.phase(g))
        lines.append(
            ",".join(
                _fmt(v)
                for v in (
                    i,
                    p.order,
                    p.length_m,
                    p.delay_s * 1e9,
                    p.departure_az_deg,
                    p.arrival_az_deg,
                    gain_db,
                    phase,
                )
            )
        )
    _write_output(lines, args.out)
    return EXIT_OK


def cmd_coverage(args) -> int:
    scenario = _resolve_scenario(args)
    rx = _pick_rx(scenario, args.position)
    scene = scenario.scene
    rx_az = _terminal_orientation(rx, scenario.tx[0].position)
    entries = [
        (t.label, t.position, _patterns(args, t), _terminal_orientation(t, rx.position)) for t in scenario.tx
    ]
    points = coverage_sweep(scene, entries, rx.position, _patterns(args, rx), rx_az, args.max_order)
    lines = ["tx_label,x_m,y_m,pl_db"]
    lines.append(f"# scenario={scenario.name} rx={rx.label} max_order={args.max_order}")
    for pt in points:
        lines.append(",".join(_fmt(v) for v in (pt.label, pt.position.x, pt.position.y, pt.path_loss_db)))
    _write_output(lines, args.out)
    return EXIT_OK


def cmd_aoa(args) -> int:
    scenario = _resolve_scenario(args)
    tx = scenario.tx[0]
    rx = _pick_rx(scenario, args.position)
    scene = scenario.scene
    step = args.step_deg or rx.sweep_step_deg or 6.0
    sweep = aoa_sweep(
        scene,
        tx.position,
        _patterns(args, tx),
        _terminal_orientation(tx, rx.position),
        rx.position,
        _patterns(args, rx),
        step_deg=step,
        max_order=args.max_order,
    )
    lines = ["azimuth_deg,power_dbm"]
    lines.append(
        f"# scenario={scenario.name} position={rx.label} step_deg={_fmt(step)} "
        f"argmax_deg={_fmt(sweep.argmax_deg)} max_power_dbm={_fmt(sweep.max_power_dbm)}"
    )
    for az, p in zip(sweep.azimuths_deg, sweep.power_dbm):
        lines.append(f"{_fmt(float(az))},{_fmt(float(p))}")
    _write_output(lines, args.out)
    return EXIT_OK


def cmd_pdp(args) -> int:
    scenario = _resolve_scenario(args)
    tx = scenario.tx[0]
    rx = _pick_rx(scenario, args.position)
    scene = scenario.scene
    plan = scene.frequency_plan
    paths = find_paths(scene, tx.position, rx.position, args.max_order)
    if not paths:
        raise _UsageError("no propagation paths between the selected terminals")
    terms = [
        make_term(
            scene,
            p,
            _patterns(args, tx),
            _terminal_orientation(tx, rx.position),
            _patterns(args, rx),
            _terminal_orientation(rx, tx.position),
        )
        for p in paths
    ]
    resp = synthesize(terms, plan)
    profile = make_pdp(resp, window=args.window, normalization=args.normalization)
    lines = ["delay_ns,power_db"]
    lines.append(
        f"# scenario={scenario.name} fc_ghz={_fmt(plan.fc_ghz)} bandwidth_ghz={_fmt(plan.bandwidth_ghz)} "
        f"n_points={plan.n_points} tx_power_dbm={_fmt(plan.tx_power_dbm)} window={args.window} "
        f"normalization={args.normalization}"
    )
    for d, p in zip(profile.delays_ns, profile.power_db):
        lines.append(f"{_fmt(float(d))},{_fmt(float(p))}")
    _write_output(lines, args.out)
    return EXIT_OK


def cmd_design_panel(args) -> int:
    panel = design_panel(args.frequency_ghz, args.n_cells, PanelMode(args.panel_mode))
    lines = ["index,pitch_mm,width_mm,depth_mm"]
    lines.append(
        f"# mode={args.panel_mode} design_frequency_ghz={_fmt(panel.design_frequency_ghz)} "
        f"size_x_m={_fmt(panel.size_x_m)}"
    )
    for i, c in enumerate(panel.cells):
        lines.append(",".join(_fmt(v) for v in (i, c.pitch_mm, c.width_mm, c.depth_mm)))
    _write_output(lines, args.out)
    return EXIT_OK


def cmd_validate(args) -> int:
    name = args.scenario
    if name in BUILTIN_NAMES:
        scenario = builtin_scenario(name, getattr(args, "variant", None), getattr(args, "case", None))
    else:
        path = Path(name)
        if not path.exists():
            raise _UsageError(f"unknown scenario {name!r}")
        scenario = load(path, validate=False)
    violations = validate_scene(scenario.scene)
    lines = ["code,detail"]
    for v in violations:
        lines.append(f"{v.code},{v.detail}")
    _write_output(lines, args.out)
    return EXIT_VALIDATION if violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mmwray", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, position=True):
        p.add_argument("--scenario", required=True, help="builtin name or scenario file path")
        p.add_argument("--variant", help="l_corridor: vertical|horizontal|none; t_corridor: panel|none")
        p.add_argument("--case", help="meeting_room: los|blocked|blocked_tx_depointed|blocked_both_depointed")
        p.add_argument("--max-order", type=int, default=2, dest="max_order")
        p.add_argument("--out", help="output CSV path (stdout when omitted)")
        p.add_argument("--isotropic", action="store_true", help="replace antenna patterns by 0 dBi isotropic")
        if position:
            p.add_argument("--position", help="rx terminal label (defaults to the first)")

    p_trace = sub.add_parser("trace", help="dump the path list as CSV")
    add_common(p_trace)
    p_trace.set_defaults(func=cmd_trace)

    p_cov = sub.add_parser("coverage", help="averaged path loss per tx position")
    add_common(p_cov)
    p_cov.set_defaults(func=cmd_coverage)

    p_aoa = sub.add_parser("aoa", help="received power versus rx azimuth")
    add_common(p_aoa)
    p_aoa.add_argument("--step-deg", type=float, dest="step_deg")
    p_aoa.set_defaults(func=cmd_aoa)

    p_pdp = sub.add_parser("pdp", help="power delay profile of the link")
    add_common(p_pdp)
    p_pdp.add_argument("--window", choices=("rectangular", "hann"), default="rectangular")
    p_pdp.add_argument(
        "--normalization", choices=("absolute", "relative_to_global_max"), default="relative_to_global_max"
    )
    p_pdp.set_defaults(func=cmd_pdp)

    p_dp = sub.add_parser("design-panel", help="emit the groove cell table as CSV")
    p_dp.add_argument("--panel-mode", choices=("ideal_tem", "table2"), default="table2", dest="panel_mode")
    p_dp.add_argument("--n-cells", type=int, default=80, dest="n_cells")
    p_dp.add_argument("--frequency-ghz", type=float, default=60.0, dest="frequency_ghz")
    p_dp.add_argument("--out")
    p_dp.set_defaults(func=cmd_design_panel)

    p_val = sub.add_parser("validate", help="check a scenario against the scene invariants")
    add_common(p_val, position=False)
    p_val.set_defaults(func=cmd_validate)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ScenarioFormatError, ScenarioValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - invariant breach surface
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
