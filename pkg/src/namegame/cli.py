"""Command-line front door.

One invocation fully describes one experiment; the command line is echoed
into the CSV header comment so every output file records how it was made.
Exit codes: 0 on success, 2 on usage errors, 1 on runtime failures.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .experiments import ExperimentSpec, format_csv, run_experiment, write_csv
from .figures import emit_svg
from .scheduling import AlphaAsynchronous, FullyAsynchronous, Sequential, parse_scheme


def _scheme_arg(text):
    try:
        return parse_scheme(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="namegame",
        description="Simulate word-consensus dynamics on a network and write the "
                    "averaged observables as CSV (optionally SVG).",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--lattice", type=_positive_int, metavar="L",
                        help="periodic LxL lattice with the four nearest neighbors")
    source.add_argument("--graph", metavar="PATH",
                        help="edge-list file: first line n, then 'u v' lines, # comments")
    parser.add_argument("--scheme", type=_scheme_arg, required=True,
                        help="sequential | fully-async | synchronous | alpha-async:<p>")
    parser.add_argument("--runs", type=_positive_int, default=100, metavar="K",
                        help="independent runs to average (default 100)")
    parser.add_argument("--seed", type=int, default=0, metavar="S",
                        help="base seed; run i uses seed S+i (default 0)")
    parser.add_argument("--max-sweeps", type=_positive_int, default=2000, metavar="K",
                        help="sweep budget per run (default 2000)")
    parser.add_argument("--stop-on-consensus", action="store_true",
                        help="stop each run once a single shared word remains")
    parser.add_argument("--record-every", type=_positive_int, default=1, metavar="K",
                        help="sampling stride for the time series (default 1)")
    parser.add_argument("--sequential-order", choices=("raster", "random"), default="raster",
                        help="vertex order for the sequential scheme (default raster)")
    parser.add_argument("--fully-async-sampling", choices=("replacement", "permutation"),
                        default="replacement",
                        help="per-sweep vertex sampling for fully-async (default replacement)")
    parser.add_argument("--initial", choices=("random", "identity"), default="random",
                        help="initial word placement (default random, seed-derived)")
    parser.add_argument("--normalize-x-by-alpha", action="store_true",
                        help="divide the t column by alpha (alpha-async only)")
    parser.add_argument("--out", metavar="PREFIX",
                        help="output prefix; writes PREFIX.csv (and PREFIX.svg with --svg); "
                             "without it the CSV goes to stdout")
    parser.add_argument("--svg", action="store_true", help="also render PREFIX.svg")
    return parser


def parse_experiment(argv) -> ExperimentSpec:
    """Turn CLI tokens into a validated ExperimentSpec (SystemExit 2 on usage errors)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    scheme = args.scheme
    if isinstance(scheme, Sequential) and args.sequential_order != "raster":
        scheme = replace(scheme, order=args.sequential_order)
    if isinstance(scheme, FullyAsynchronous) and args.fully_async_sampling != "replacement":
        scheme = replace(scheme, sampling=args.fully_async_sampling)
    if args.normalize_x_by_alpha and not isinstance(scheme, AlphaAsynchronous):
        parser.error("--normalize-x-by-alpha only applies to alpha-async schemes")
    if args.svg and args.out is None:
        parser.error("--svg needs --out to name the file")
    return ExperimentSpec(
        scheme=scheme,
        lattice=args.lattice,
        graph_path=args.graph,
        runs=args.runs,
        base_seed=args.seed,
        max_sweeps=args.max_sweeps,
        stop_on_consensus=args.stop_on_consensus,
        record_every=args.record_every,
        initial=args.initial,
        normalize_x_by_alpha=args.normalize_x_by_alpha,
        out_prefix=args.out,
        svg=args.svg,
    )


def describe(spec: ExperimentSpec) -> str:
    """Canonical command line reproducing this spec (recorded in the CSV)."""
    from .scheduling import scheme_label

    parts = ["namegame"]
    if spec.lattice is not None:
        parts += ["--lattice", str(spec.lattice)]
    else:
        parts += ["--graph", str(spec.graph_path)]
    parts += ["--scheme", scheme_label(spec.scheme)]
    if isinstance(spec.scheme, Sequential) and spec.scheme.order == "random":
        parts += ["--sequential-order", "random"]
    if isinstance(spec.scheme, FullyAsynchronous) and spec.scheme.sampling != "replacement":
        parts += ["--fully-async-sampling", spec.scheme.sampling]
    parts += ["--runs", str(spec.runs), "--seed", str(spec.base_seed),
              "--max-sweeps", str(spec.max_sweeps)]
    if spec.stop_on_consensus:
        parts.append("--stop-on-consensus")
    if spec.record_every != 1:
        parts += ["--record-every", str(spec.record_every)]
    if spec.initial != "random":
        parts += ["--initial", spec.initial]
    if spec.normalize_x_by_alpha:
        parts.append("--normalize-x-by-alpha")
    if spec.out_prefix is not None:
        parts += ["--out", str(spec.out_prefix)]
    if spec.svg:
        parts.append("--svg")
    return " ".join(parts)


def main(argv=None) -> int:
    spec = parse_experiment(argv if argv is not None else sys.argv[1:])
    try:
        series = run_experiment(spec)
        if spec.out_prefix is None:
            sys.stdout.write(format_csv(series, command=describe(spec)))
            return 0
        csv_path = f"{spec.out_prefix}.csv"
        write_csv(series, csv_path, command=describe(spec))
        written = [csv_path]
        if spec.svg:
            svg_path = f"{spec.out_prefix}.svg"
            emit_svg([series], svg_path)
            written.append(svg_path)
    except (OSError, ValueError) as exc:
        print(f"namegame: error: {exc}", file=sys.stderr)
        return 1
    print("wrote " + " ".join(written))
    return 0


if __name__ == "__main__":
    sys.exit(main())
