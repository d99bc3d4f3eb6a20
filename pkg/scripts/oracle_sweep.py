"""Random differential testing of the solvers against brute force.

Prints a counterexample and exits nonzero on the first disagreement.
"""
import argparse
import sys

import numpy as np

from wedmatch.core_text import format_cost
from wedmatch.generators import alphabet_of, mutate, random_string, random_weight_table
from wedmatch.nk_solver import solve_banded, solve_nk
from wedmatch.occurrences import bf_occurrences, list_all_occs, sellers_starts


def sweep(trials: int, max_n: int, max_m: int, max_k: int, seed: int) -> int:
    rng = np.random.default_rng(seed)
    for t in range(trials):
        alpha = alphabet_of(int(rng.integers(1, 5)))
        w = random_weight_table(rng, alpha)
        P = random_string(rng, int(rng.integers(1, max_m + 1)), alpha)
        T = random_string(rng, int(rng.integers(0, max_n + 1)), alpha)
        if rng.random() < 0.5:
            at = int(rng.integers(0, len(T) + 1))
            T = T[:at] + mutate(rng, P, int(rng.integers(0, 3)), alpha) + T[at:]
        k = int(rng.integers(0, max_k * 1_000_000 + 1))
        bf = bf_occurrences(P, T, k, w)
        got = {
            "sellers": sellers_starts(P, T, k, w).starts,
            "banded": solve_banded(P, T, k, w).starts,
            "nk": solve_nk(P, T, k, w).starts,
        }
        want = bf.as_starts().starts
        bad = [name for name, s in got.items() if s != want]
        if list_all_occs(P, T, k, w).triples != bf.triples:
            bad.append("list")
        if bad:
            print(f"trial {t}: {bad} disagree with brute force")
            print(f"P={P!r}\nT={T!r}\nk={format_cost(k)}\nweights={w.matrix.tolist()}")
            return 1
        if (t + 1) % 500 == 0:
            print(f"{t + 1} trials ok")
    print(f"all {trials} trials agree")
    return 0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--max-n", type=int, default=60)
    ap.add_argument("--max-m", type=int, default=30)
    ap.add_argument("--max-k", type=int, default=8, help="in whole units")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    sys.exit(sweep(a.trials, a.max_n, a.max_m, a.max_k, a.seed))


if __name__ == "__main__":
    main()
