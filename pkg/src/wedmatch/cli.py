"""Command line entry point: ``wedmatch match|list|verify|bench|gen``."""
from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass
from typing import Optional

from .core_text import SCALE, WeightTable, format_cost, load_weight_table, parse_cost, unit_table
from .errors import NormalizationError, ParseError, WedmatchError
from .generators import GenConfig, generate_pair
from .nk_solver import solve_banded, solve_nk
from .occurrences import OccReport, iter_all_occs, sellers_starts, verify, witness_ends

ALGOS = ("sellers", "banded", "nk")
EXIT_USAGE, EXIT_WEIGHTS, EXIT_IO = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    pattern_path: Optional[str] = None
    text_path: Optional[str] = None
    weights_path: Optional[str] = None
    k: str = "0"
    algo: str = "nk"
    report: str = "starts"
    seed: int = 0
    threads: int = 1

    @property
    def k_micros(self) -> int:
        try:
            return parse_cost(self.k)
        except ParseError as e:
            raise UsageError(f"bad -k value: {e}") from None


def read_input(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        data = fh.read()
    if data.endswith("\n"):
        data = data[:-1]
        if data.endswith("\r"):
            data = data[:-1]
    return data


def load_weights(path: Optional[str]) -> WeightTable:
    if path is None:
        return unit_table()
    return load_weight_table(read_input(path))


def run_algo(algo: str, P: str, T: str, k: int, w: WeightTable, threads: int = 1) -> OccReport:
    if algo == "sellers":
        return sellers_starts(P, T, k, w)
    if not P:
        # the chunked solvers need a nonempty pattern; every start matches trivially
        return sellers_starts(P, T, k, w)
    if algo == "banded":
        return solve_banded(P, T, k, w, threads)
    return solve_nk(P, T, k, w, threads)


def parse_interval(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise UsageError(f"malformed interval {text!r}, expected L:R") from None
    if lo > hi:
        raise UsageError(f"interval {text!r} has L > R")
    return lo, hi


def parse_sizes(specs: list[str]) -> list[tuple[int, int, str]]:
    out = []
    for item in specs:
        for part in item.replace(";", " ").split():
            fields = part.split(",")
            if len(fields) != 3:
                raise UsageError(f"size {part!r} is not an n,m,k triple")
            try:
                n, m = int(fields[0]), int(fields[1])
                parse_cost(fields[2])
            except (ValueError, ParseError):
                raise UsageError(f"size {part!r} is not an n,m,k triple") from None
            if n < 1 or not 1 <= m <= n:
                raise UsageError(f"size {part!r} needs 1 <= m <= n")
            out.append((n, m, fields[2]))
    if not out:
        raise UsageError("no sizes given")
    return out


# ---------------------------------------------------------------------------
# subcommands


def _instance(cfg: RunConfig):
    if cfg.pattern_path is None or cfg.text_path is None:
        raise UsageError("--pattern and --text are required")
    k = cfg.k_micros
    P = read_input(cfg.pattern_path)
    T = read_input(cfg.text_path)
    w = load_weights(cfg.weights_path)
    return P, T, k, w


def cmd_match(cfg: RunConfig, out) -> int:
    P, T, k, w = _instance(cfg)
    rep = run_algo(cfg.algo, P, T, k, w, cfg.threads)
    if cfg.report == "starts":
        for i, _ in rep.starts:
            out.write(f"{i}\n")
    else:
        for i, j, dist in witness_ends(P, T, rep.starts, w):
            out.write(f"{i}\t{j}\t{format_cost(dist)}\n")
    return 0


def cmd_list(cfg: RunConfig, out) -> int:
    P, T, k, w = _instance(cfg)
    for i, j, dist in iter_all_occs(P, T, k, w):
        out.write(f"{i}\t{j}\t{format_cost(dist)}\n")
    return 0


def cmd_verify(cfg: RunConfig, interval: str, out) -> int:
    lo, hi = parse_interval(interval)
    P, T, k, w = _instance(cfg)
    for i, dist in verify(P, T, k, (lo, hi), w).starts:
        out.write(f"{i}\t{format_cost(dist)}\n")
    return 0


def cmd_bench(cfg: RunConfig, sizes: list[str], repeats: int, algos: list[str], out) -> int:
    triples = parse_sizes(sizes)
    w = load_weights(cfg.weights_path)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["algo", "n", "m", "k", "seed", "wall_ms", "occ_count"])
    for algo in algos:
        # load compiled kernels before anything is timed
        run_algo(algo, "acgtacgtacgtacgtacgtacgtacgtacgtacgtacgt", "acgt" * 30, SCALE, w.covering("acgt"))
    for n, m, ktext in triples:
        k = parse_cost(ktext)
        edits = max(k // SCALE, 1) // 2
        P, T = generate_pair(GenConfig(n, m, 4, edits / m, cfg.seed))
        wt = w.covering(P, T)
        for algo in algos:
            for _ in range(repeats):
                t0 = time.perf_counter()
                rep = run_algo(algo, P, T, k, wt, cfg.threads)
                ms = (time.perf_counter() - t0) * 1000
                writer.writerow([algo, n, m, ktext, cfg.seed, f"{ms:.3f}", len(rep.starts)])
                out.flush()
    return 0


def cmd_gen(cfg: RunConfig, gen: GenConfig) -> int:
    if cfg.pattern_path is None or cfg.text_path is None:
        raise UsageError("--pattern and --text name the output files")
    P, T = generate_pair(gen)
    for path, data in ((cfg.pattern_path, P), (cfg.text_path, T)):
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(data + "\n")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pattern", dest="pattern_path")
    common.add_argument("--text", dest="text_path")
    common.add_argument("-k", default="0")
    common.add_argument("--weights", dest="weights_path")
    common.add_argument("--algo", choices=ALGOS, default="nk")
    common.add_argument("--report", choices=("starts", "full"), default="starts")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)

    p = _Parser(prog="wedmatch", description="Pattern matching under weighted edit distance.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    sub.add_parser("match", parents=[common], help="starting positions of occurrences")
    sub.add_parser("list", parents=[common], help="all (start, end, distance) triples")
    v = sub.add_parser("verify", parents=[common], help="occurrences starting in L:R")
    v.add_argument("--interval", required=True)
    b = sub.add_parser("bench", parents=[common], help="time the solvers on generated inputs")
    b.add_argument("--sizes", action="append", default=[],
                   help="n,m,k triples separated by ';' (repeatable)")
    b.add_argument("--repeats", type=int, default=1)
    b.add_argument("--algos", default=",".join(ALGOS))
    g = sub.add_parser("gen", parents=[common], help="write a random pattern/text pair")
    g.add_argument("--length", type=int, default=1000)
    g.add_argument("--pattern-length", type=int)
    g.add_argument("--sigma", type=int, default=4)
    g.add_argument("--mutation-rate", type=float, default=0.01)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(args.pattern_path, args.text_path, args.weights_path, args.k,
                    args.algo, args.report, args.seed, args.threads)
    out = sys.stdout
    try:
        if cfg.threads < 1:
            raise UsageError("--threads must be positive")
        if args.cmd == "match":
            return cmd_match(cfg, out)
        if args.cmd == "list":
            return cmd_list(cfg, out)
        if args.cmd == "verify":
            return cmd_verify(cfg, args.interval, out)
        if args.cmd == "bench":
            algos = [a for a in args.algos.split(",") if a]
            bad = [a for a in algos if a not in ALGOS]
            if bad or not algos or args.repeats < 1:
                raise UsageError(f"bad --algos/--repeats: {args.algos!r}, {args.repeats}")
            return cmd_bench(cfg, args.sizes, args.repeats, algos, out)
        gen = GenConfig(args.length, args.pattern_length, args.sigma, args.mutation_rate, cfg.seed)
        if gen.length < 1 or gen.sigma < 1 or gen.mutation_rate < 0 or (
                gen.pattern_length is not None and gen.pattern_length < 1):
            raise UsageError("gen parameters must be positive")
        return cmd_gen(cfg, gen)
    except UsageError as e:
        print(f"wedmatch: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NormalizationError, ParseError) as e:
        print(f"wedmatch: invalid weight table: {e}", file=sys.stderr)
        return EXIT_WEIGHTS
    except (OSError, UnicodeDecodeError) as e:
        print(f"wedmatch: {e}", file=sys.stderr)
        return EXIT_IO
    except (WedmatchError, ValueError) as e:
        print(f"wedmatch: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
