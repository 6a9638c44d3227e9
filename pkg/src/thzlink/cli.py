"""Command-line front end: one subcommand per figure, CSV or SVG output.

Exit status 0 on success, 2 for usage or validation errors, 3 for numeric
failures. Diagnostics are a single line on stderr.
"""

from __future__ import annotations

import argparse
import re
import sys
from typing import Sequence

from . import figures
from .channel import load_absorption_table
from .coverage import DEFAULT_TRIALS
from .errors import NumericError, ThzLinkError
from .propagation import CIRCULAR, HORIZONTAL, VERTICAL
from .sweep import SweepTable, render_svg

EXIT_USAGE = 2
EXIT_NUMERIC = 3

_SUFFIX = {"": 1.0, "k": 1e3, "M": 1e6, "G": 1e9, "T": 1e12}
_FREQ_RE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*([kMGT]?)(?:Hz)?\s*$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_frequency(text: str) -> float:
    """Hz with optional k/M/G/T suffix: ``40e9``, ``40G``, ``0.4THz``."""
    m = _FREQ_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"invalid frequency {text!r}")
    return float(m.group(1)) * _SUFFIX[m.group(2)]


def _list_of(conv):
    def parse(text: str) -> list:
        try:
            items = [conv(t) for t in text.split(",") if t.strip()]
        except (ValueError, argparse.ArgumentTypeError) as exc:
            raise argparse.ArgumentTypeError(f"invalid list {text!r}: {exc}") from None
        if not items:
            raise argparse.ArgumentTypeError("empty list")
        return items
    return parse


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


_POLARIZATION = {"h": HORIZONTAL, "v": VERTICAL, "c": CIRCULAR}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thzlink", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    shared = _Parser(add_help=False)
    shared.add_argument("--points", type=_positive_int, default=200,
                        help="frequency grid size (default 200)")
    shared.add_argument("--out", default="-", help="output path, '-' for stdout")
    shared.add_argument("--format", choices=("csv", "svg"), default="csv")

    p = sub.add_parser("fspl", parents=[shared], help="free-space path loss vs frequency")
    p.add_argument("--f-min", type=parse_frequency, default=1e9)
    p.add_argument("--f-max", type=parse_frequency, default=1e12)
    p.add_argument("--ranges", type=_list_of(float), default=list(figures.FSPL_RANGES_M),
                   help="comma list of ranges in m")

    p = sub.add_parser("rain", parents=[shared], help="ITU and Crane rain loss vs frequency")
    p.add_argument("--model", choices=("itu", "crane", "both"), default="both")
    p.add_argument("--rates", type=_list_of(float), default=list(figures.RAIN_RATES_MM_H),
                   help="comma list of rain rates in mm/h")
    p.add_argument("--distance", type=float, default=1000.0, help="path length in m")
    p.add_argument("--polarization", choices=tuple(_POLARIZATION), default="h")
    p.add_argument("--elevation", type=float, default=0.0, help="path elevation in degrees")
    p.add_argument("--f-min", type=parse_frequency, default=1e9)
    p.add_argument("--f-max", type=parse_frequency, default=1e12)

    p = sub.add_parser("fog", parents=[shared], help="fog loss vs frequency")
    p.add_argument("--densities", type=_list_of(float), default=list(figures.FOG_DENSITIES_G_M3),
                   help="comma list of liquid water densities in g/m3")
    p.add_argument("--temperature", type=float, default=figures.FOG_TEMPERATURE_C,
                   help="temperature in C")
    p.add_argument("--distance", type=float, default=100.0, help="path length in m")
    p.add_argument("--f-min", type=parse_frequency, default=10e9)
    p.add_argument("--f-max", type=parse_frequency, default=1e12)

    p = sub.add_parser("snr", parents=[shared], help="link SNR vs carrier, one series per distance")
    p.add_argument("--band", choices=("mmwave", "thz", "both", "custom"), default="both")
    p.add_argument("--carriers", type=_list_of(parse_frequency), default=None)
    p.add_argument("--distances", type=_list_of(float), default=list(figures.FIG2_DISTANCES_M))
    p.add_argument("--bandwidth", type=parse_frequency, default=None,
                   help="override the per-band bandwidth (Hz)")
    p.add_argument("--tx-power", type=float, default=0.5, help="W")
    p.add_argument("--noise-figure", type=float, default=10.0, help="dB")
    p.add_argument("--beamforming", action="store_true", help="add 10 log10(N_tx N_rx)")
    p.add_argument("--bs-elems", type=_positive_int, default=16)
    p.add_argument("--ue-elems", type=_positive_int, default=4)
    p.add_argument("--absorption-file", default=None)

    p = sub.add_parser("coverage", parents=[shared], help="PPP coverage probability vs density")
    p.add_argument("--carrier", type=_list_of(parse_frequency), default=None,
                   help="carrier(s); omitted: the default 40 GHz / 0.4 THz / 2 THz set")
    p.add_argument("--bs-elems", type=_positive_int, default=16)
    p.add_argument("--ue-elems", type=_positive_int, default=4)
    p.add_argument("--densities", type=_list_of(float),
                   default=list(figures.COVERAGE_DENSITIES), help="BS per km2")
    p.add_argument("--threshold", type=float, default=0.0, help="SNR threshold in dB")
    p.add_argument("--trials", type=_positive_int, default=DEFAULT_TRIALS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tx-power", type=float, default=0.5, help="W")
    p.add_argument("--noise-figure", type=float, default=10.0, help="dB")
    p.add_argument("--workers", type=_positive_int, default=1)
    p.add_argument("--absorption-file", default=None)
    return parser


def _absorption(path):
    if path is None:
        return None
    try:
        return load_absorption_table(path)
    except OSError as exc:
        raise UsageError(f"cannot read absorption file {path!r}: {exc.strerror}") from None


# y-axis label and log scale per subcommand
_PLOT = {
    "fspl": ("Free-space path loss", "loss (dB)", False),
    "rain": ("Rain attenuation", "loss (dB)", True),
    "fog": ("Fog attenuation", "loss (dB)", True),
    "snr": ("Link SNR", "SNR (dB)", False),
    "coverage": ("P(SNR > threshold)", "coverage probability", False),
}


def build_table(args) -> SweepTable:
    match args.command:
        case "fspl":
            return figures.fspl_table(args.f_min, args.f_max, args.ranges, args.points)
        case "rain":
            return figures.rain_table(args.model, args.rates, args.distance,
                                      _POLARIZATION[args.polarization], args.elevation,
                                      args.f_min, args.f_max, args.points)
        case "fog":
            return figures.fog_table(args.densities, args.temperature, args.distance,
                                     args.f_min, args.f_max, args.points)
        case "snr":
            if args.band == "custom" and not args.carriers:
                raise UsageError("--band custom requires --carriers")
            return figures.snr_table(args.band, args.carriers, args.distances, args.bandwidth,
                                     args.tx_power, args.noise_figure, args.beamforming,
                                     args.bs_elems, args.ue_elems, _absorption(args.absorption_file))
        case "coverage":
            configs = figures.COVERAGE_CONFIGS
            if args.carrier:
                configs = [(f, args.bs_elems, args.ue_elems) for f in args.carrier]
            return figures.coverage_table(configs, sorted(args.densities), args.threshold,
                                          args.trials, args.seed, args.tx_power, args.noise_figure,
                                          _absorption(args.absorption_file), args.workers)
    raise UsageError(f"unknown command {args.command!r}")


def render(table: SweepTable, command: str, fmt: str) -> str:
    if fmt == "svg":
        title, y_label, log_y = _PLOT[command]
        return render_svg(table, title=title, y_label=y_label, log_x=True, log_y=log_y)
    return table.to_csv()


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text = render(build_table(args), args.command, args.format)
        if args.out == "-":
            sys.stdout.write(text)
            sys.stdout.flush()
        else:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except NumericError as exc:
        print(f"thzlink: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, ThzLinkError, ValueError) as exc:
        print(f"thzlink: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"thzlink: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
