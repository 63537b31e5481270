"""Command-line interface.

    spinhall validate
    spinhall trace SCENARIO [--out-dir DIR] [--plot]
    spinhall phase PATH.csv
    spinhall shift PATH.csv --lambda {+1,-1}
    spinhall plot TRAJ.csv [TRAJ.csv ...] [-o OUT.svg]

Exit codes: 0 success, 1 failed validation, 2 bad input.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import trajio, validation
from .core import Helicity
from .dynamics import integrate, trace_pair
from .errors import SpinHallError
from .functionals import berry_phase, hall_shift

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _color(text, code, stream):
    if os.environ.get("NO_COLOR") is not None or not stream.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _say(args, *lines):
    if not args.quiet:
        for line in lines:
            print(line)


def _read_text(path: str, suffix: str = ".json") -> str:
    """File contents, falling back to a bundled data file of the same name."""
    p = Path(path)
    if not p.exists():
        from .scenario import bundled
        name = p.name if p.suffix else p.name + suffix
        try:
            return bundled(name)
        except FileNotFoundError:
            raise FileNotFoundError(f"no such file: {path}") from None
    return p.read_text()


def cmd_validate(args):
    checks = validation.run_all()
    width = max(len(c.name) for c in checks)
    rows = [f"{'check':<{width}}  {'value':>12}  {'bound':<14}  result"]
    for c in checks:
        verdict = _color("PASS", "32", sys.stdout) if c.passed else _color("FAIL", "31", sys.stdout)
        rows.append(f"{c.name:<{width}}  {c.value:>12.3e}  {c.bound:<14}  {verdict}")
    print("\n".join(rows))
    failed = sum(not c.passed for c in checks)
    _say(args, f"validate: {len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_trace(args):
    from .scenario import load_scenario

    sc = load_scenario(_read_text(args.scenario), default_prefix=Path(args.scenario).stem)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if len(sc.helicities) == 2:
        pair = trace_pair(sc.initial_state(), sc.medium, sc.physics, sc.integrator)
        trajs = {Helicity.PLUS: pair.plus, Helicity.MINUS: pair.minus}
        splitting = pair.splitting
    else:
        lam = sc.helicities[0]
        trajs = {lam: integrate(sc.initial_state(lam), sc.medium, sc.physics, sc.integrator)}
        splitting = None

    written = []
    for lam, tr in trajs.items():
        name = out_dir / f"{sc.prefix}_{'plus' if lam > 0 else 'minus'}.csv"
        with open(name, "w", newline="") as fh:
            trajio.write_trajectory(tr, fh)
        written.append(str(name))

    summary = {
        "scenario": str(args.scenario),
        "files": [Path(w).name for w in written],
        "trajectories": {
            f"{int(lam):+d}": {
                "status": tr.status.value,
                "samples": len(tr),
                "gamma": tr.final_gamma,
                "dr": tr.final_dr.tolist(),
                "max_relative_drift": tr.max_relative_drift(),
                "warnings": tr.warnings,
            } for lam, tr in trajs.items()
        },
    }
    if splitting is not None:
        summary["splitting"] = splitting.tolist()
        summary["splitting_norm"] = float(np.linalg.norm(splitting))
    with open(out_dir / f"{sc.prefix}_summary.json", "w", newline="") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    if args.plot:
        from .plotting import plot_trajectories
        svg = out_dir / f"{sc.prefix}.svg"
        plot_trajectories(list(trajs.values()), svg, title=sc.prefix)
        written.append(str(svg))

    lines = [f"wrote {w}" for w in written]
    if splitting is not None:
        s = splitting
        lines.append(f"trace: splitting = ({s[0]:.10e}, {s[1]:.10e}, {s[2]:.10e}) "
                     f"|splitting| = {np.linalg.norm(s):.10e}")
    else:
        tr = next(iter(trajs.values()))
        lines.append(f"trace: status = {tr.status.value}, dr = {tr.final_dr.tolist()}")
    _say(args, *lines)
    return EXIT_OK


def _load_path(path):
    return trajio.read_momentum_path(io.StringIO(_read_text(path, ".csv")))


def cmd_phase(args):
    path = _load_path(args.path)
    bp = berry_phase(path)
    print(f"{bp.gamma:.12f}")
    if bp.closed:
        _say(args, f"phase: closed loop, winding {bp.winding}, solid angle "
                   f"{bp.solid_angle:.12f}, gauge-invariant residual {bp.residual:.3e}")
    else:
        _say(args, "phase: open path; value depends on the cot(theta) gauge")
    return EXIT_OK


def cmd_shift(args):
    v = hall_shift(_load_path(args.path), args.lam)
    print(f"{v[0]:.12e} {v[1]:.12e} {v[2]:.12e}")
    _say(args, f"shift: |dr| = {np.linalg.norm(v):.12e} (lambda = {args.lam:+d})")
    return EXIT_OK


def cmd_plot(args):
    from .plotting import plot_trajectories

    trajs = []
    for name in args.trajectories:
        with open(name, newline="") as fh:
            trajs.append(trajio.read_trajectory(fh))
    out = args.output or str(Path(args.trajectories[0]).with_suffix(".svg"))
    plot_trajectories(trajs, out)
    _say(args, f"plot: wrote {out}")
    return EXIT_OK


def _helicity(text):
    try:
        return int(Helicity(int(text)))
    except ValueError:
        raise argparse.ArgumentTypeError("lambda must be +1 or -1") from None


def build_parser():
    parser = _Parser(prog="spinhall", description="Spin-Hall ray tracing for photons.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress summary lines")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common],
                       help="run the gauge/curvature/flatness self-checks")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("trace", parents=[common],
                       help="trace both helicities for a scenario")
    p.add_argument("scenario")
    p.add_argument("--out-dir", default=".")
    p.add_argument("--plot", action="store_true", help="also write an SVG figure")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("phase", parents=[common],
                       help="Rytov angle of a px,py,pz momentum path")
    p.add_argument("path")
    p.set_defaults(func=cmd_phase)

    p = sub.add_parser("shift", parents=[common],
                       help="spin-Hall shift of a px,py,pz momentum path")
    p.add_argument("path")
    p.add_argument("--lambda", dest="lam", type=_helicity, required=True)
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("plot", parents=[common], help="SVG of one or more trajectory CSVs")
    p.add_argument("trajectories", nargs="+")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (SpinHallError, OSError, ValueError) as exc:
        print(f"spinhall {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
