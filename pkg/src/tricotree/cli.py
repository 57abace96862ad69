"""Command-line front end.

Subcommands: sample (emit outdeg-lines), tricolor (colour trees from
stdin), limits (limit constants as JSON), experiment (Monte Carlo table),
oracle-check (exhaustive equivalence suite).  Exit codes: 0 success,
1 usage error, 2 runtime error.  All randomness flows from --seed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from .colouring import derived_stats, tricolour
from .errors import TricotreeError
from .experiment import ExperimentConfig, records_to_csv, records_to_json, run_experiment
from .limits import limit_constants
from .oracle import enumerate_min_covers, enumerate_plane_trees, max_matching, nullity_exact
from .sampler import SamplerConfig, replicate_seed, sample_conditioned
from .tree import format_outdeg_line, parse_outdeg_lines
from .weights import FAMILY_GRAMMAR, classify, parse_family

__all__ = ["main", "entrypoint"]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # usage problems exit 1; argparse's default would be 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_family(p: argparse.ArgumentParser):
    p.add_argument("--family", required=True, help=f"weight family: {FAMILY_GRAMMAR}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="tricotree",
        description=(
            "Sample simply generated random trees, colour them by minimum "
            "vertex cover membership, and compare colour fractions to their "
            "large-size limits."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[], help="emit sampled trees as outdeg-lines")
    _add_family(p)
    p.add_argument("--n", type=int, required=True, help="vertex count")
    p.add_argument("--count", type=int, default=1, help="number of trees (default 1)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--method", choices=("auto", "rejection", "dp"), default="auto")

    p = sub.add_parser("tricolor", help="colour outdeg-line trees from stdin")

    p = sub.add_parser("limits", help="print limit constants as JSON")
    _add_family(p)

    p = sub.add_parser("experiment", help="Monte Carlo aggregation table")
    _add_family(p)
    p.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    p.add_argument("--replicates", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--method", choices=("auto", "rejection", "dp"), default="auto")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("oracle-check", help="exhaustive brute-force equivalence suite")
    p.add_argument("--max-n", type=int, default=8, help="largest tree size (default 8)")

    return parser


def _cmd_sample(args) -> int:
    family = parse_family(args.family)
    for i in range(args.count):
        cfg = SamplerConfig(
            n=args.n, seed=replicate_seed(args.seed, args.n, i), method=args.method
        )
        print(format_outdeg_line(sample_conditioned(family, cfg)))
    return 0


def _cmd_tricolor(args) -> int:
    for tree in parse_outdeg_lines(sys.stdin):
        tc = tricolour(tree)
        ind, mat, nul = derived_stats(tc)
        print(f"{tc.colour_string()}\t{tc.n_g} {tc.n_o} {tc.n_r} {ind} {mat} {nul}")
    return 0


def _cmd_limits(args) -> int:
    lc = limit_constants(classify(parse_family(args.family)))
    payload = {
        "q": lc.q,
        "q_tilde": lc.q_tilde,
        "p_green": lc.p_green,
        "p_orange": lc.p_orange,
        "p_red": lc.p_red,
        "lim_I": lc.lim_I,
        "lim_M": lc.lim_M,
        "lim_N": lc.lim_N,
    }
    rounded = {key: float(f"{value:.12g}") for key, value in payload.items()}
    rounded["regime"] = lc.regime
    print(json.dumps(rounded))
    return 0


def _cmd_experiment(args) -> int:
    sizes = tuple(int(tok) for tok in args.sizes.split(","))
    cfg = ExperimentConfig(
        family=parse_family(args.family),
        sizes=sizes,
        replicates=args.replicates,
        seed=args.seed,
        method=args.method,
    )
    records = run_experiment(cfg)
    text = records_to_csv(records) if args.format == "csv" else records_to_json(records)
    if args.out is None:
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def _cmd_oracle_check(args) -> int:
    failures = 0
    for n in range(1, args.max_n + 1):
        trees = 0
        bad = 0
        for tree in enumerate_plane_trees(n):
            trees += 1
            tc = tricolour(tree)
            report = enumerate_min_covers(tree)
            ind, mat, nul = derived_stats(tc)
            ok = (
                tc.colours == report.colours()
                and ind == n - report.cover_size
                and mat == max_matching(tree)
                and nul == nullity_exact(tree)
            )
            bad += not ok
        status = "pass" if bad == 0 else f"FAIL ({bad} trees)"
        print(f"n={n} trees={trees} {status}")
        failures += bad
    return 0 if failures == 0 else 2


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "sample": _cmd_sample,
        "tricolor": _cmd_tricolor,
        "limits": _cmd_limits,
        "experiment": _cmd_experiment,
        "oracle-check": _cmd_oracle_check,
    }
    try:
        return handlers[args.command](args)
    except TricotreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint():
    sys.exit(main())
