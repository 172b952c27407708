"""Command-line front end.

Subcommands: mine, oracle, diff, gen, bench.  Exit codes: 0 success (and
diff agreement), 1 usage error, 2 parse error, 3 diff mismatch.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import dataio
from .generate import GenParams, generate
from .membership import default_membership_function
from .miner import MinerConfig, mine, prune_ratio
from .oracle import OracleGuardError, oracle_mine

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_DIFF = 3

THREADS_ENV = "TFMINE_BENCH_THREADS"
DIFF_TOLERANCE = 1e-9


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; the contract reserves 2 for parse
    # errors, so usage problems are remapped to 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_input_args(p, with_gamma=True):
    p.add_argument("dataset", help="transaction database file")
    p.add_argument("profits", help="per-item profit file")
    p.add_argument("--membership", metavar="JSON",
                   help="membership function config (default: built-in Low/Middle/High)")
    if with_gamma:
        p.add_argument("--gamma", type=float, required=True,
                       help="minimum utility ratio threshold, a fraction in [0, 1]")
    p.add_argument("--rounding", choices=["exact", "2-decimals"], default="exact",
                   help="degree rounding mode (default: exact)")


def build_parser() -> _Parser:
    parser = _Parser(prog="tfmine",
                     description="Mine high temporal fuzzy utility itemsets.")
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p_mine = sub.add_parser("mine", help="run the list-based miner")
    _add_input_args(p_mine)
    p_mine.add_argument("--out", default="-", help="results CSV path (default: stdout)")
    p_mine.add_argument("--metrics", metavar="JSON",
                        help="also write results plus search metrics as JSON")
    p_mine.add_argument("--no-extension-prune", action="store_true",
                        help="ablation: disable the remaining-measure extension/retention prune")
    p_mine.add_argument("--no-join-abort", action="store_true",
                        help="ablation: disable the early abort inside list joins")
    p_mine.add_argument("--remaining-only-retention", action="store_true",
                        help="study variant: retain joins by remaining sum alone (incomplete)")

    p_oracle = sub.add_parser("oracle", help="run the brute-force reference miner")
    _add_input_args(p_oracle)
    p_oracle.add_argument("--out", default="-", help="results CSV path (default: stdout)")

    p_diff = sub.add_parser("diff", help="compare miner and oracle output")
    _add_input_args(p_diff)

    p_gen = sub.add_parser("gen", help="generate a seeded synthetic database")
    p_gen.add_argument("--items", type=int, required=True)
    p_gen.add_argument("--transactions", type=int, required=True)
    p_gen.add_argument("--periods", type=int, required=True)
    p_gen.add_argument("--max-quantity", type=int, default=6)
    p_gen.add_argument("--profit-min", type=int, default=1)
    p_gen.add_argument("--profit-max", type=int, default=10)
    p_gen.add_argument("--density", type=int, default=4,
                       help="mean items per transaction")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out-dataset", required=True)
    p_gen.add_argument("--out-profits", required=True)

    p_bench = sub.add_parser("bench", help="sweep gammas x period counts on synthetic data")
    p_bench.add_argument("--items", type=int, default=100)
    p_bench.add_argument("--transactions", type=int, default=2000)
    p_bench.add_argument("--density", type=int, default=6)
    p_bench.add_argument("--max-quantity", type=int, default=6)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--gammas", default="0.05,0.1,0.2",
                         help="comma-separated thresholds")
    p_bench.add_argument("--periods", default="1,2,4",
                         help="comma-separated period counts")
    p_bench.add_argument("--rounding", choices=["exact", "2-decimals"], default="exact")
    return parser


def _check_gamma(parser, gamma):
    if not 0.0 <= gamma <= 1.0:
        parser.error(f"--gamma must be a fraction in [0, 1], got {gamma}")


def _load_inputs(args):
    db = dataio.parse_database(args.dataset, args.profits)
    mf = (dataio.load_membership(args.membership) if args.membership
          else default_membership_function())
    return db, mf


def _write_csv(path, rows):
    if path == "-":
        dataio.write_results_csv(sys.stdout, rows)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            dataio.write_results_csv(fh, rows)


def _cmd_mine(args) -> int:
    db, mf = _load_inputs(args)
    config = MinerConfig(
        gamma=args.gamma,
        extension_prune=not args.no_extension_prune,
        join_abort=not args.no_join_abort,
        remaining_only_retention=args.remaining_only_retention,
        rounding=args.rounding,
    )
    outcome = mine(db, mf, config)
    _write_csv(args.out, dataio.result_rows(outcome))
    if args.metrics:
        with open(args.metrics, "w", encoding="utf-8") as fh:
            dataio.write_metrics_json(fh, args.gamma, outcome)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    db, mf = _load_inputs(args)
    try:
        rows = oracle_mine(db, mf, args.gamma, rounding=args.rounding)
    except OracleGuardError as exc:
        print(f"tfmine oracle: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_csv(args.out, dataio.oracle_rows(rows))
    return EXIT_OK


def _result_maps(args):
    db, mf = _load_inputs(args)
    config = MinerConfig(gamma=args.gamma, rounding=args.rounding)
    outcome = mine(db, mf, config)
    mined = {
        frozenset((fi.item, fi.region) for fi in r.itemset): r.tfur
        for r in outcome.results
    }
    reference = {
        frozenset(row.itemset): row.tfur
        for row in oracle_mine(db, mf, args.gamma, rounding=args.rounding)
    }
    return mined, reference


def _cmd_diff(args) -> int:
    try:
        mined, reference = _result_maps(args)
    except OracleGuardError as exc:
        print(f"tfmine diff: {exc}", file=sys.stderr)
        return EXIT_USAGE
    problems = []
    for key in sorted(reference.keys() - mined.keys()):
        problems.append(f"missing from miner: {_label(key)}")
    for key in sorted(mined.keys() - reference.keys()):
        problems.append(f"extra in miner: {_label(key)}")
    for key in sorted(mined.keys() & reference.keys()):
        if abs(mined[key] - reference[key]) > DIFF_TOLERANCE:
            problems.append(
                f"tfur mismatch for {_label(key)}: "
                f"miner {mined[key]!r} vs reference {reference[key]!r}"
            )
    if problems:
        for p in problems:
            print(p)
        print(f"{len(problems)} disagreement(s)")
        return EXIT_DIFF
    print(f"agreement on {len(reference)} itemsets")
    return EXIT_OK


def _label(key) -> str:
    return "&".join(f"{item}.{region}" for item, region in sorted(key))


def _cmd_gen(args) -> int:
    params = GenParams(
        item_count=args.items, transaction_count=args.transactions,
        period_count=args.periods, max_quantity=args.max_quantity,
        profit_min=args.profit_min, profit_max=args.profit_max,
        density=args.density, seed=args.seed,
    )
    try:
        db = generate(params)
    except ValueError as exc:
        print(f"tfmine gen: {exc}", file=sys.stderr)
        return EXIT_USAGE
    dataio.write_database(db, args.out_dataset, args.out_profits)
    return EXIT_OK


def _cmd_bench(args) -> int:
    try:
        threads = int(os.environ.get(THREADS_ENV, "1"))
    except ValueError:
        print(f"tfmine bench: {THREADS_ENV} must be an integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        gammas = [float(g) for g in args.gammas.split(",") if g]
        period_counts = [int(p) for p in args.periods.split(",") if p]
    except ValueError:
        print("tfmine bench: --gammas and --periods must be comma-separated numbers",
              file=sys.stderr)
        return EXIT_USAGE
    mf = default_membership_function()

    jobs = []
    for periods in period_counts:
        db = generate(GenParams(
            item_count=args.items, transaction_count=args.transactions,
            period_count=periods, max_quantity=args.max_quantity,
            density=args.density, seed=args.seed,
        ))
        for gamma in gammas:
            jobs.append((periods, gamma, db))

    def run(job):
        periods, gamma, db = job
        outcome = mine(db, mf, MinerConfig(gamma=gamma, rounding=args.rounding))
        return periods, gamma, outcome

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run, jobs))
    else:
        outcomes = [run(job) for job in jobs]

    print(f"{'periods':>7} {'gamma':>6} {'wall_s':>8} {'visited':>9} "
          f"{'candidates':>10} {'prune_ratio':>11} {'results':>7}")
    for periods, gamma, outcome in outcomes:
        m = outcome.metrics
        print(f"{periods:>7} {gamma:>6g} {m.wall_seconds:>8.3f} "
              f"{m.visited_nodes:>9} {m.candidates:>10} "
              f"{prune_ratio(m):>11.4f} {len(outcome.results):>7}")
    return EXIT_OK


_COMMANDS = {
    "mine": _cmd_mine,
    "oracle": _cmd_oracle,
    "diff": _cmd_diff,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "gamma", None) is not None:
        try:
            _check_gamma(parser, args.gamma)
        except SystemExit as exc:
            return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except dataio.ParseError as exc:
        print(f"tfmine: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
