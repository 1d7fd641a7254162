"""Command-line interface.

Exit codes: 0 success, 1 usage or I/O error, 2 validation failure,
3 oracle disagreement, 4 numeric error (zero evidence, value above one).
"""

from __future__ import annotations

import argparse
import sys

from mdse import bench
from mdse.document import load_graph, save_graph, serialize_graph
from mdse.errors import (
    BadDirection,
    DuplicateEdge,
    LoopDetected,
    MdseError,
    NotValid,
    NumericError,
)
from mdse.generate import GeneratorConfig, generate_graph
from mdse.graph import ValidationMode, validate
from mdse.inference import Normalization, ProbQuery, QueryMode, event_posterior, prob_event
from mdse.oracle import oracle_check
from mdse.priors import update_group

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_ORACLE = 3
EXIT_NUMERIC = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mdse", description="Hypothesis/event graph toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check graph structure")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("infer", help="probability of one event")
    p.add_argument("file")
    p.add_argument("--event", type=int, required=True)
    p.add_argument("--mode", choices=["or", "and"], default="or")
    p.add_argument("--checked", action="store_true", help="fail when the value exceeds 1")

    p = sub.add_parser("posterior", help="posterior over a group given an event")
    p.add_argument("file")
    p.add_argument("--group", type=int, required=True)
    p.add_argument("--event", type=int, required=True)

    p = sub.add_parser("update", help="replace a group's priors by its posterior")
    p.add_argument("file")
    p.add_argument("--group", type=int, required=True)
    p.add_argument("--event", type=int, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("generate", help="write a seeded random graph")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n-star", type=int, default=2)
    p.add_argument("--n-prime", type=int, default=2)
    p.add_argument("--groups-star", type=int, default=1)
    p.add_argument("--groups-prime", type=int, default=1)
    p.add_argument("--max-group-size", type=int, default=3)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--out", required=True, help="output file, '-' for stdout")

    p = sub.add_parser("oracle-check", help="compare inference against brute force")
    p.add_argument("file")
    p.add_argument("--all", action="store_true", dest="all_checks")

    p = sub.add_parser("bench", help="scaling benchmark")
    p.add_argument("--sizes", default=None, help="n:m:density[,n:m:density...]")
    p.add_argument("--op", choices=[o.value for o in bench.BenchOp], default="mixture")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repetitions", type=int, default=bench.REPETITIONS)
    p.add_argument("--csv", default=None)
    return parser


def _validate(args, out):
    graph = load_graph(args.file, checked=False)
    mode = ValidationMode.STRICT if args.strict else ValidationMode.RELAXED
    report = validate(graph, mode)
    print(report.format(), file=out)
    return EXIT_OK if report.passed else EXIT_INVALID


def _infer(args, out):
    graph = load_graph(args.file)
    norm = Normalization.CHECKED if args.checked else Normalization.LITERAL
    result = prob_event(graph, ProbQuery(args.event, QueryMode(args.mode), norm))
    print(result.format(), file=out)
    return EXIT_OK


def _posterior(args, out):
    graph = load_graph(args.file)
    print(event_posterior(graph, args.group, args.event).format(), file=out)
    return EXIT_OK


def _update(args, out):
    graph = load_graph(args.file)
    updated = update_group(graph, args.group, args.event)
    save_graph(updated, args.out)
    print(f"wrote {args.out}", file=out)
    return EXIT_OK


def _generate(args, out):
    config = GeneratorConfig(
        seed=args.seed, n_star_events=args.n_star, n_prime_events=args.n_prime,
        groups_star=args.groups_star, groups_prime=args.groups_prime,
        max_group_size=args.max_group_size, edge_density=args.density, strict=args.strict,
    )
    graph = generate_graph(config)
    if args.out == "-":
        out.write(serialize_graph(graph))
    else:
        save_graph(graph, args.out)
        s = graph.shape
        print(f"wrote {args.out} (n={s.n} m={s.m} e={s.e})", file=out)
    return EXIT_OK


def _oracle(args, out):
    graph = load_graph(args.file)
    report = oracle_check(graph, all_checks=args.all_checks)
    print(report.format(), file=out)
    return EXIT_OK if report.agrees else EXIT_ORACLE


def _bench(args, out):
    sizes = bench.parse_sizes(args.sizes) if args.sizes else bench.DEFAULT_SIZES
    points = bench.run_scaling_bench(sizes, args.seed, args.op, args.repetitions)
    print("n\tm\te\tmedian_ns\trepetitions", file=out)
    for p in points:
        print(f"{p.n}\t{p.m}\t{p.e}\t{p.wall_time}\t{p.repetitions}", file=out)
    if len(points) >= 5:
        try:
            fit = bench.fit_scaling_exponent(points)
            print(f"exponent\t{fit.exponent:.3f}\nr_squared\t{fit.r_squared:.3f}", file=out)
        except MdseError as exc:
            print(f"no fit: {exc}", file=out)
    if args.csv:
        bench.write_csv(points, args.csv)
    return EXIT_OK


COMMANDS = {
    "validate": _validate,
    "infer": _infer,
    "posterior": _posterior,
    "update": _update,
    "generate": _generate,
    "oracle-check": _oracle,
    "bench": _bench,
}


def run_cli(argv=None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except NumericError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_NUMERIC
    except (NotValid, LoopDetected, DuplicateEdge, BadDirection) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INVALID
    except (MdseError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_USAGE


def main():
    sys.exit(run_cli())
