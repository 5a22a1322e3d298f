"""``sds-steer`` command-line front end.

Exit codes: 0 success, 1 usage/validation, 2 outside the admissible domain,
3 file I/O, 4 root bracket without a sign change.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import BracketError, DomainError, InvalidArgumentError, SqueezingOverflowError
from .output import render_csv, render_json
from .pipeline import Scenario, steering_from_spacetime
from .spacetime import DEFAULT_OMEGA, SdSParameters, horizon_thermodynamics
from .svg import REGIME_COLORS, cell_map, line_plot
from .sweep import (
    PARAMETERS,
    Axis,
    BoundaryKind,
    FigureId,
    SweepSpec,
    boundary_objective,
    figure_preset,
    find_boundary,
    find_max_asymmetry,
    run_sweep,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_IO, EXIT_BRACKET = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_params(p, *, s=False, omega_default=DEFAULT_OMEGA, required=True):
    p.add_argument("--mass", type=float, required=required, help="black-hole mass M")
    p.add_argument("--lambda", dest="lam", type=float, required=required, help="cosmological constant")
    if s:
        p.add_argument("--s", type=float, required=required, help="initial two-mode squeezing")
    p.add_argument("--omega", type=float, default=omega_default, help="mode frequency (default %(default)s)")


def _add_fixed(p):
    p.add_argument("--mass", type=float)
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--omega", type=float)


def _add_vary(p, steps=False):
    p.add_argument("--vary", choices=PARAMETERS, required=not steps)
    p.add_argument("--lo", type=float, required=not steps)
    p.add_argument("--hi", type=float, required=not steps)
    if steps:
        p.add_argument("--steps", type=int, default=101)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sds-steer", description="Gaussian steering in Schwarzschild-de Sitter spacetime")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("horizons", help="horizon radii, surface gravities and thermodynamics")
    _add_params(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("steer", help="steering at one parameter point")
    _add_params(p, s=True)
    p.add_argument("--scenario", choices=[sc.value for sc in Scenario], default="membrane")
    p.add_argument("--numeric", action="store_true", help="use the covariance-matrix pipeline")
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("sweep", help="1D/2D parameter sweep")
    p.add_argument("--preset", type=Path, help="JSON sweep spec")
    _add_vary(p, steps=True)
    _add_fixed(p)
    p.add_argument("--scenario", choices=[sc.value for sc in Scenario], default="membrane")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", type=Path, help="output file (default stdout)")

    p = sub.add_parser("figure", help="reproduce a figure panel as CSV (and SVG)")
    p.add_argument("id", choices=[f.value for f in FigureId])
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--with-plot", action="store_true")

    p = sub.add_parser("boundary", help="bisect a sudden-death or regime-transition boundary")
    p.add_argument("kind", choices=[k.value for k in BoundaryKind])
    _add_vary(p)
    _add_fixed(p)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("max-asym", help="location of maximal steering asymmetry")
    _add_vary(p)
    _add_fixed(p)
    p.add_argument("--scenario", choices=[sc.value for sc in Scenario], default="membrane")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def _emit(record: dict, fmt: str, out) -> None:
    if fmt == "csv":
        out.write(render_csv([record], list(record)))
    else:
        out.write(render_json(record))


def _fixed_from(args, vary=None) -> dict[str, float]:
    given = {"mass": args.mass, "lambda": args.lam, "s": args.s, "omega": args.omega}
    return {k: v for k, v in given.items() if v is not None and k != vary}


def cmd_horizons(args, out) -> int:
    data = horizon_thermodynamics(args.mass, args.lam, args.omega)
    record = {"mass": args.mass, "lambda": args.lam, "omega": args.omega, **data.as_dict()}
    _emit(record, args.format, out)
    return EXIT_OK


def cmd_steer(args, out) -> int:
    params = SdSParameters(args.mass, args.lam, args.omega)
    result = steering_from_spacetime(params, args.s, args.scenario, numeric=args.numeric)
    record = {"mass": args.mass, "lambda": args.lam, "omega": args.omega, **result.as_record()}
    _emit(record, args.format, out)
    return EXIT_OK


def _spec_from_args(args) -> SweepSpec:
    if args.preset is not None:
        text = args.preset.read_text(encoding="utf-8")
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"{args.preset}: invalid JSON ({exc})") from exc
        return SweepSpec.from_dict(data)
    if args.vary is None or args.lo is None or args.hi is None:
        raise UsageError("sweep needs either --preset or --vary/--lo/--hi")
    return SweepSpec(
        Scenario(args.scenario), _fixed_from(args, args.vary), Axis(args.vary, args.lo, args.hi, args.steps)
    ).validate()


def cmd_sweep(args, out) -> int:
    spec = _spec_from_args(args)
    records = [row.as_record(spec.outputs) for row in run_sweep(spec)]
    text = render_csv(records, spec.outputs) if args.format == "csv" else render_json(records)
    if args.out is None:
        out.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
    return EXIT_OK


_AXIS_LABELS = {"mass": "M", "lambda": "Lambda", "s": "s", "omega": "omega"}


def figure_svg(fig: FigureId, spec: SweepSpec, rows) -> str:
    title = fig.value
    if spec.axis2 is None:
        axis = spec.axis1.name
        x = [row.as_record([axis])[axis] for row in rows]
        cols = [c for c in spec.outputs if c not in (axis, "regime", "admissible", "scenario")]
        series = {c: [row.as_record([c])[c] for row in rows] for c in cols}
        return line_plot(x, series, title=title, xlabel=_AXIS_LABELS[axis])
    a1, a2 = spec.axis1, spec.axis2
    n2 = a2.steps
    if fig is FigureId.FIG6:
        key, categorical = "regime", dict(REGIME_COLORS)
    else:
        key, categorical = "asym", None
    values = [row.as_record([key])[key] for row in rows]
    cells = [values[i * n2 : (i + 1) * n2] for i in range(a1.steps)]
    return cell_map(
        list(a2.values()), list(a1.values()), cells,
        title=f"{title}: {key}", xlabel=_AXIS_LABELS[a2.name], ylabel=_AXIS_LABELS[a1.name],
        categorical=categorical,
    )


def cmd_figure(args, out) -> int:
    fig = FigureId(args.id)
    spec = figure_preset(fig)
    rows = run_sweep(spec)
    csv_text = render_csv([row.as_record(spec.outputs) for row in rows], spec.outputs)
    args.out.mkdir(parents=True, exist_ok=True)
    csv_path = args.out / f"{fig.value}.csv"
    csv_path.write_text(csv_text, encoding="utf-8", newline="")
    written = [csv_path]
    if args.with_plot:
        svg_path = args.out / f"{fig.value}.svg"
        svg_path.write_text(figure_svg(fig, spec, rows), encoding="utf-8", newline="")
        written.append(svg_path)
    for p in written:
        out.write(f"{p}\n")
    return EXIT_OK


def cmd_boundary(args, out) -> int:
    fixed = _fixed_from(args, args.vary)
    root = find_boundary(args.kind, args.vary, (args.lo, args.hi), fixed, args.tol)
    residual = boundary_objective(args.kind, args.vary, fixed)(root)
    _emit({"kind": args.kind, "vary": args.vary, "root": root, "residual": residual, "tol": args.tol}, args.format, out)
    return EXIT_OK


def cmd_max_asym(args, out) -> int:
    loc, val = find_max_asymmetry(args.vary, (args.lo, args.hi), _fixed_from(args, args.vary), args.scenario)
    _emit({"vary": args.vary, "location": loc, "max_asym": val}, args.format, out)
    return EXIT_OK


COMMANDS = {
    "horizons": cmd_horizons,
    "steer": cmd_steer,
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "boundary": cmd_boundary,
    "max-asym": cmd_max_asym,
}


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except BracketError as exc:
        err.write(f"sds-steer: bracket error: {exc}\n")
        return EXIT_BRACKET
    except (DomainError, SqueezingOverflowError) as exc:
        err.write(f"sds-steer: domain error: {exc}\n")
        return EXIT_DOMAIN
    except (InvalidArgumentError, UsageError) as exc:
        err.write(f"sds-steer: invalid input: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"sds-steer: I/O error: {exc}\n")
        return EXIT_IO


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
