"""Command-line front end: sweeps, analysis reports, comparisons, verification.

Output is deterministic: numbers are printed with 12 significant digits,
lines end with LF, and identical flags produce byte-identical output.

Exit codes: 0 ok, 1 tolerance violation (verify), 2 configuration error,
3 state validation error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import analysis, channels, verification
from .analysis import NonMarkovParams, SweepSeries
from .channels import ChannelKind, Locality
from .errors import IntraentError, NotNormalized, ZeroVector
from .states import PureState4, parse_state_text

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_CONFIG = 2
EXIT_STATE = 3


def fmt(x: float) -> str:
    """Shortest decimal at 12 significant digits; -0 never escapes."""
    return format(float(x) + 0.0, ".12g")


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _parse_state(args) -> PureState4:
    try:
        return parse_state_text(args.state, normalize=args.normalize)
    except (NotNormalized, ZeroVector, ValueError) as exc:
        raise _CliError(EXIT_STATE, f"invalid state: {exc}") from exc


def _grid(args) -> np.ndarray:
    try:
        return analysis.p_grid(args.p_min, args.p_max, args.steps)
    except IntraentError as exc:
        raise _CliError(EXIT_CONFIG, f"invalid grid: {exc}") from exc


def _emit(text: str, out_path: str | None) -> None:
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(text)


def _csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


def _json_object(pairs) -> str:
    body = ",".join(f'"{k}":{v}' for k, v in pairs)
    return "{" + body + "}\n"


def _json_number_array(values) -> str:
    return "[" + ",".join(fmt(v) for v in values) + "]"


def _sweep_csv(series: SweepSeries) -> str:
    rows = []
    for i, p in enumerate(series.p_values):
        analytic = "" if series.c_analytic is None else fmt(series.c_analytic[i])
        rows.append((fmt(p), fmt(series.c_numeric[i]), analytic))
    return _csv("P,C_numeric,C_analytic", rows)


def _sweep_json(series: SweepSeries) -> str:
    analytic = "null" if series.c_analytic is None else _json_number_array(series.c_analytic)
    return _json_object([
        ("channel", f'"{series.kind.value}"'),
        ("locality", f'"{series.locality.value}"'),
        ("P", _json_number_array(series.p_values)),
        ("C_numeric", _json_number_array(series.c_numeric)),
        ("C_analytic", analytic),
    ])


def _cmd_sweep(args) -> int:
    state = _parse_state(args)
    grid = _grid(args)
    series = analysis.sweep(state, args.channel, args.locality, grid)
    text = _sweep_json(series) if args.format == "json" else _sweep_csv(series)
    _emit(text, args.out)
    if args.plot:
        from . import plotting

        plotting.plot_sweep(series, args.plot)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    if args.locality is not Locality.INTRAPARTICLE:
        raise _CliError(EXIT_CONFIG, "analyze supports --locality intra only")
    state = _parse_state(args)
    report = analysis.analyze_state(state, args.channel)

    def number_or_null(v):
        return "null" if v is None else fmt(v)

    text = _json_object([
        ("esd_p", number_or_null(report.esd_p)),
        ("p_minus", number_or_null(report.p_minus)),
        ("c_minus", number_or_null(report.c_minus)),
        ("p_plus", number_or_null(report.p_plus)),
        ("c_plus", number_or_null(report.c_plus)),
        ("c_tilde", number_or_null(report.c_tilde)),
        ("classification", f'"{report.classification.value}"'),
        ("delta_theta", number_or_null(report.delta_theta if report.delta_theta_defined else None)),
    ])
    _emit(text, args.out)
    return EXIT_OK


def _cmd_compare(args) -> int:
    state = _parse_state(args)
    grid = _grid(args)
    intra, inter = analysis.compare_intra_inter(state, args.channel, grid)
    rows = [
        (fmt(p), fmt(ci), fmt(ce))
        for p, ci, ce in zip(intra.p_values, intra.c_numeric, inter.c_numeric)
    ]
    _emit(_csv("P,C_intra,C_inter", rows), args.out)
    if args.plot:
        from . import plotting

        plotting.plot_compare(intra, inter, args.plot)
    return EXIT_OK


def _cmd_nonmarkov(args) -> int:
    state = _parse_state(args)
    if args.steps < 2:
        raise _CliError(EXIT_CONFIG, "invalid grid: need at least 2 time steps")
    if args.t_max <= 0.0:
        raise _CliError(EXIT_CONFIG, "invalid grid: t-max must be positive")
    times = np.linspace(0.0, args.t_max, args.steps)
    try:
        strengths = np.array([
            analysis.nonmarkov_p(NonMarkovParams(args.big_gamma, args.small_gamma, float(t)))
            for t in times
        ])
    except IntraentError as exc:
        raise _CliError(EXIT_CONFIG, f"invalid rates: {exc}") from exc
    evolved = channels.evolve_pure_grid(
        state.vector, ChannelKind.AMPLITUDE_DAMPING, Locality.INTERPARTICLE, strengths
    )
    from .concurrence import _concurrence_numeric_grid

    conc = _concurrence_numeric_grid(evolved)
    rows = [(fmt(t), fmt(p), fmt(c)) for t, p, c in zip(times, strengths, conc)]
    _emit(_csv("t,P,C_inter_numeric", rows), args.out)
    if args.plot:
        from . import plotting

        plotting.plot_nonmarkov(times, strengths, conc, args.plot)
    return EXIT_OK


def _section_lines(section) -> list[str]:
    lines = [
        f"channel={section.kind.value} locality={section.locality.value} trials={section.trials}",
        f"  completeness_max   = {fmt(section.completeness_max)}",
        f"  trace_error_max    = {fmt(section.trace_error_max)}",
        f"  hermiticity_max    = {fmt(section.hermiticity_max)}",
        f"  min_eigenvalue     = {fmt(section.min_eigenvalue)}",
    ]
    if section.deviation_max is not None:
        lines.append(
            f"  deviation_max      = {fmt(section.deviation_max)}"
            f" (tolerance {fmt(section.deviation_tol)})"
        )
    if section.rank2_error_max is not None:
        lines.append(f"  rank2_error_max    = {fmt(section.rank2_error_max)}")
    lines.append(f"  result             = {'PASS' if section.passed else 'FAIL'}")
    if not section.passed and section.worst_case is not None:
        state, p = section.worst_case
        amps = ",".join(f"{z.real!r},{z.imag!r}" for z in state.amplitudes)
        lines.append(f"  worst_state        = {amps}")
        lines.append(f"  worst_p            = {p!r}")
    return lines


def _cmd_verify(args) -> int:
    if args.trials < 1:
        raise _CliError(EXIT_CONFIG, "trials must be >= 1")
    if args.seed < 0:
        raise _CliError(EXIT_CONFIG, "seed must be nonnegative")
    kinds = (args.channel,) if args.channel else None
    localities = (args.locality,) if args.locality else None
    report = verification.run_verification(args.seed, args.trials, kinds, localities)
    lines = [f"verify seed={report.seed} trials={report.trials}"]
    for section in report.sections:
        lines.extend(_section_lines(section))
    lines.append("overall            = " + ("PASS" if report.passed else "FAIL"))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if report.passed else EXIT_TOLERANCE


def _add_state_args(sub) -> None:
    sub.add_argument("--state", required=True,
                     help="cartesian re,im x4 or polar:|a|,deg,... (see README)")
    sub.add_argument("--normalize", action="store_true",
                     help="rescale the given amplitudes to unit norm")


def _add_grid_args(sub) -> None:
    sub.add_argument("--p-min", type=float, default=0.0)
    sub.add_argument("--p-max", type=float, default=1.0)
    sub.add_argument("--steps", type=int, default=1001)


def _channel_arg(value: str) -> ChannelKind:
    return ChannelKind(value)


def _locality_arg(value: str) -> Locality:
    return Locality(value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="intraent",
        description="Concurrence of four-level states under noise channels.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    sweep = commands.add_parser("sweep", help="concurrence vs channel strength")
    sweep.add_argument("--channel", type=_channel_arg, required=True, choices=list(ChannelKind),
                       metavar="{ad,pd,dp}")
    sweep.add_argument("--locality", type=_locality_arg, required=True, choices=list(Locality),
                       metavar="{intra,inter}")
    _add_state_args(sweep)
    _add_grid_args(sweep)
    sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    sweep.add_argument("--out", default=None, help="output path (default stdout)")
    sweep.add_argument("--plot", default=None, help="also render the curves to this image file")
    sweep.set_defaults(func=_cmd_sweep)

    analyze = commands.add_parser("analyze", help="sudden-death / revival report")
    analyze.add_argument("--channel", type=_channel_arg, required=True, choices=list(ChannelKind),
                         metavar="{ad,pd,dp}")
    analyze.add_argument("--locality", type=_locality_arg, default=Locality.INTRAPARTICLE,
                         choices=list(Locality), metavar="{intra,inter}")
    _add_state_args(analyze)
    analyze.add_argument("--out", default=None)
    analyze.set_defaults(func=_cmd_analyze)

    compare = commands.add_parser("compare", help="intra vs inter on one grid")
    compare.add_argument("--channel", type=_channel_arg, required=True, choices=list(ChannelKind),
                         metavar="{ad,pd,dp}")
    _add_state_args(compare)
    _add_grid_args(compare)
    compare.add_argument("--out", default=None)
    compare.add_argument("--plot", default=None)
    compare.set_defaults(func=_cmd_compare)

    nonmarkov = commands.add_parser("nonmarkov", help="oscillatory strength time trace")
    _add_state_args(nonmarkov)
    nonmarkov.add_argument("--big-gamma", type=float, required=True)
    nonmarkov.add_argument("--small-gamma", type=float, required=True)
    nonmarkov.add_argument("--t-max", type=float, required=True)
    nonmarkov.add_argument("--steps", type=int, default=501)
    nonmarkov.add_argument("--out", default=None)
    nonmarkov.add_argument("--plot", default=None)
    nonmarkov.set_defaults(func=_cmd_nonmarkov)

    verify = commands.add_parser("verify", help="seeded closed-form vs numeric check")
    verify.add_argument("--seed", type=int, required=True)
    verify.add_argument("--trials", type=int, required=True)
    verify.add_argument("--channel", type=_channel_arg, default=None, choices=list(ChannelKind),
                        metavar="{ad,pd,dp}")
    verify.add_argument("--locality", type=_locality_arg, default=None, choices=list(Locality),
                        metavar="{intra,inter}")
    verify.add_argument("--out", default=None)
    verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NotNormalized, ZeroVector) as exc:
        print(f"error: invalid state: {exc}", file=sys.stderr)
        return EXIT_STATE
    except IntraentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
