"""Time nk against the baselines on generated inputs and print a table.

    python scripts/bench_scaling.py --n 25000 50000 100000 200000 --k 4 16
"""
import argparse
import time
from dataclasses import dataclass, field
from statistics import median

from wedmatch.core_text import SCALE, unit_table
from wedmatch.generators import GenConfig, generate_pair
from wedmatch.nk_solver import solve_banded, solve_nk
from wedmatch.occurrences import sellers_starts

SOLVERS = {"nk": solve_nk, "banded": solve_banded, "sellers": sellers_starts}


@dataclass
class BenchConfig:
    sizes: list = field(default_factory=lambda: [25_000, 50_000, 100_000])
    ks: list = field(default_factory=lambda: [4, 16])
    ratio: float = 0.5
    repeats: int = 3
    algos: tuple = ("nk", "sellers")
    seed: int = 1


def run(cfg: BenchConfig):
    w = unit_table("acgt")
    for f in SOLVERS.values():
        f("acgt" * 30, "acgt" * 60, SCALE, w)
    print(f"{'algo':8} {'n':>8} {'m':>8} {'k':>4} {'median_s':>9} {'occ':>7}")
    prev = {}
    for k in cfg.ks:
        for n in cfg.sizes:
            m = max(1, int(n * cfg.ratio))
            P, T = generate_pair(GenConfig(n, m, 4, (k // 2) / m, cfg.seed))
            for algo in cfg.algos:
                times = []
                for _ in range(cfg.repeats):
                    t0 = time.perf_counter()
                    rep = SOLVERS[algo](P, T, k * SCALE, w)
                    times.append(time.perf_counter() - t0)
                t = median(times)
                growth = f"  x{t / prev[algo, k]:.2f}" if (algo, k) in prev else ""
                prev[algo, k] = t
                print(f"{algo:8} {n:8d} {m:8d} {k:4d} {t:9.3f} {len(rep.starts):7d}{growth}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, nargs="+", default=BenchConfig().sizes)
    ap.add_argument("--k", type=int, nargs="+", default=BenchConfig().ks)
    ap.add_argument("--ratio", type=float, default=0.5, help="m / n")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--algos", default="nk,sellers")
    ap.add_argument("--seed", type=int, default=1)
    a = ap.parse_args()
    run(BenchConfig(a.n, a.k, a.ratio, a.repeats, tuple(a.algos.split(",")), a.seed))


if __name__ == "__main__":
    main()
