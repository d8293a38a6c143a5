"""Command line entry point: ``phonograd report|sweep|compare|presets``."""

import argparse
import sys

from . import emit
from .errors import ConfigError, PhonogradError, PhysicsError
from .report import load_sweep, report_fields, run_comparison, run_report, run_sweep, sweep_table
from .scenario import dumps, load_scenario, preset_names, preset_text

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3


def _write(text, output):
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _color(args):
    return args.format == "table" and not args.output and emit._use_color(sys.stdout)


def cmd_report(args):
    sc = load_scenario(args.scenario, args.override)
    fields = report_fields(run_report(sc))
    _write(emit.emit_report(fields, args.format, _color(args)), args.output)


def cmd_sweep(args):
    spec = load_sweep(args.sweep, args.override)
    rows = run_sweep(spec, workers=args.workers)
    header, body = sweep_table(spec, rows)
    _write(emit.emit_table(header, body, args.format, _color(args)), args.output)


def cmd_compare(args):
    sc = load_scenario(args.scenario, args.override)
    rows, (free, _), notes = run_comparison(sc)
    header = [
        ("scheme", ""),
        ("epsilon_grad", "s^-2"),
        ("delta_rel", "1"),
        ("delta_abs", "s^-2"),
        ("delta_rel_shot", "1"),
        ("delta_abs_shot", "s^-2"),
        ("gain_vs_phononic", "1"),
    ]
    body = [
        [r.name, r.epsilon, r.delta_rel, r.delta_abs, r.delta_rel_shot, r.delta_abs_shot, r.gain_vs_phononic]
        for r in rows
    ]
    text = emit.emit_table(header, body, args.format, _color(args))
    if args.format != "table":
        for n in notes:
            print(f"phonograd: warning: {n}", file=sys.stderr)
    else:
        text += f"\nfree-fall: t_free = {free.t_free:.4g} s, n_kick = {free.n_kick} (size limit {free.n_kick_limit:.3g})\n"
        text += "".join(f"warning: {n}\n" for n in notes)
    _write(text, args.output)


def cmd_presets(args):
    if args.show:
        text = preset_text(args.show) if not args.canonical else dumps(load_scenario(args.show))
        _write(text, args.output)
        return
    _write("".join(f"{n}\n" for n in preset_names()), args.output)


def build_parser():
    p = argparse.ArgumentParser(
        prog="phonograd",
        description="Error bounds for gravity gradiometry with condensate phonons.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=emit.FORMATS, default="table")
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument(
            "--override",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="set a dotted scenario field, e.g. condensate.n_atoms=1e8",
        )

    sp = sub.add_parser("report", help="sensitivity report for one scenario")
    sp.add_argument("scenario", help="preset name or scenario TOML file")
    common(sp)
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("sweep", help="run a parameter sweep file")
    sp.add_argument("sweep", help="sweep TOML file")
    sp.add_argument("--workers", type=int, default=1, help="parallel worker processes")
    common(sp)
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("compare", help="phonon bound vs free-fall and trapped interferometers")
    sp.add_argument("scenario", help="preset name or scenario TOML file")
    common(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("presets", help="list built-in scenarios")
    sp.add_argument("--show", metavar="NAME", help="print a preset file")
    sp.add_argument("--canonical", action="store_true", help="with --show: canonical SI form")
    sp.add_argument("--output", "-o")
    sp.set_defaults(func=cmd_presets, format="table")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ConfigError as exc:
        print(f"phonograd: input error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PhysicsError as exc:
        stage = f" in stage {exc.stage}" if exc.stage else ""
        print(f"phonograd: {type(exc).__name__}{stage}: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except PhonogradError as exc:
        print(f"phonograd: {exc}", file=sys.stderr)
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
