"""Command-line front end: ``lcwec {tune,analyze,simulate,sweep}``.

Exit codes: 0 success, 2 configuration error, 3 numerical diagnostic.
"""

from __future__ import annotations

import argparse
import contextlib
import sys
import warnings
from dataclasses import fields
from typing import Optional, Sequence

from .config import ConfigError, Scenario, get_preset, load_config, presets
from .frequency import SteadyStateReport, optimal_load, steady_state
from .model import ParameterError, check_generator
from .simulate import COLUMNS, IntegrationError, TraceTooShortError, SimTrace, simulate
from .sweep import CSV_FIELDS, SweepRow, default_grid, sweep
from .tuning import Rule, tune

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def fmt_num(value: Optional[float]) -> str:
    """17 significant digits, '.' decimal separator; ``None`` -> empty field."""
    if value is None:
        return ""
    return "%.17g" % value


def write_trace_csv(trace: SimTrace, stream) -> None:
    stream.write(",".join(COLUMNS) + "\n")
    for row in trace.data:
        stream.write(",".join(fmt_num(v) for v in row) + "\n")


def write_sweep_csv(rows: Sequence[SweepRow], stream) -> None:
    stream.write(",".join(CSV_FIELDS) + "\n")
    for r in rows:
        vals = []
        for name in CSV_FIELDS:
            v = getattr(r, name)
            vals.append(v.value if name == "mode" else fmt_num(v))
        stream.write(",".join(vals) + "\n")


REPORT_FIELDS = tuple(f.name for f in fields(SteadyStateReport))


def write_report_csv(rep: SteadyStateReport, stream) -> None:
    stream.write(",".join(REPORT_FIELDS) + "\n")
    stream.write(",".join(fmt_num(getattr(rep, n)) for n in REPORT_FIELDS) + "\n")


@contextlib.contextmanager
def _open_out(path: Optional[str]):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _scenario(args) -> Scenario:
    if args.config and args.preset:
        raise ConfigError("use either --config or --preset, not both")
    if args.config:
        sc = load_config(args.config)
    elif args.preset:
        sc = get_preset(args.preset)
    else:
        raise ConfigError("one of --config or --preset is required")
    return sc.with_overrides(
        omega=args.omega,
        resistance=args.resistance,
        dt=args.dt,
        t_end=args.t_end,
        grid=args.grid,
    )


def cmd_tune(sc: Scenario, args, out) -> int:
    decision = tune(sc.mech, sc.gen, sc.wave.omega)
    load = decision.apply(sc.resistance)
    rep = steady_state(sc.mech, sc.gen, load, sc.wave)
    opt = optimal_load(sc.mech, sc.gen, sc.wave.amplitude)
    lines = [
        ("omega", fmt_num(sc.wave.omega)),
        ("rule", decision.rule.value),
        ("capacitance", fmt_num(decision.capacitance)),
        ("inductance", fmt_num(decision.inductance)),
        ("resistance", fmt_num(load.resistance)),
        ("r_star", fmt_num(opt.r_star)),
        ("power_factor", fmt_num(rep.power_factor)),
        ("psi", fmt_num(rep.psi)),
        ("s_apparent", fmt_num(rep.s_apparent)),
        ("p_active", fmt_num(rep.p_active)),
        ("q_reactive", fmt_num(rep.q_reactive)),
        ("curr_rms", fmt_num(rep.curr_rms)),
        # generator rating needed to sustain the tuned operating point
        ("required_rating_va", fmt_num(rep.s_apparent)),
    ]
    for k, v in lines:
        out.write(f"{k} = {v}\n")
    if decision.rule is not Rule.AT_NATURAL:
        out.write(
            f"# generator must be rated >= {rep.s_apparent / 1e3:.2f} kVA "
            f"(PF {rep.power_factor:.4f}) to deliver {rep.p_active / 1e3:.3f} kW\n"
        )
    return EXIT_OK


def cmd_analyze(sc: Scenario, args, out) -> int:
    rep = steady_state(sc.mech, sc.gen, sc.resolved_load(), sc.wave)
    for name in REPORT_FIELDS:
        out.write(f"{name} = {fmt_num(getattr(rep, name))}\n")
    if args.out:
        with _open_out(args.out) as fh:
            write_report_csv(rep, fh)
    return EXIT_OK


def cmd_simulate(sc: Scenario, args, out) -> int:
    trace = simulate(sc.mech, sc.gen, sc.resolved_load(), sc.wave, sc.sim)
    if args.out:
        with _open_out(args.out) as fh:
            write_trace_csv(trace, fh)
    else:
        write_trace_csv(trace, out)
    return EXIT_OK


def cmd_sweep(sc: Scenario, args, out) -> int:
    s = sc.sweep
    rows = sweep(
        sc.mech, sc.gen, sc.resistance, sc.wave.amplitude,
        default_grid(s.points, s.omega_min, s.omega_max), s.mode,
    )
    if args.out:
        with _open_out(args.out) as fh:
            write_sweep_csv(rows, fh)
    else:
        write_sweep_csv(rows, out)
    return EXIT_OK


COMMANDS = {
    "tune": cmd_tune,
    "analyze": cmd_analyze,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lcwec",
        description="LC-tuned point-absorber wave energy converter toolkit.",
    )
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", metavar="PATH", help="key = value scenario file")
    p.add_argument(
        "--preset", metavar="NAME",
        help="built-in scenario: " + ", ".join(sorted(presets())),
    )
    p.add_argument("--out", metavar="PATH", help="CSV output file ('-' for stdout)")
    p.add_argument("--omega", type=float, help="override wave frequency (rad/s)")
    p.add_argument("--resistance", type=float, help="override load resistance (ohm)")
    p.add_argument("--dt", type=float, help="override integration step (s)")
    p.add_argument("--t-end", dest="t_end", type=float, help="override duration (s)")
    p.add_argument("--grid", type=int, help="number of sweep points")
    return p


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors, matching EXIT_CONFIG
        return int(exc.code or 0)

    try:
        sc = _scenario(args)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            check_generator(sc.gen)
            code = COMMANDS[args.command](sc, args, out)
        for w in caught:
            err.write(f"warning: {w.message}\n")
        return code
    except (ConfigError, ParameterError) as exc:
        err.write(f"config error: {exc}\n")
        return EXIT_CONFIG
    except (IntegrationError, TraceTooShortError, ArithmeticError) as exc:
        err.write(f"numeric error: {exc}\n")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
