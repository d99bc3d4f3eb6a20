"""Seeded random inputs for tests, benchmarks and the ``gen`` subcommand."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core_text import SCALE, WeightTable
from .ferns import PuzzlePiece

ALPHABET = "acgtbdefhijklmnopqrsuvwxyz"


def alphabet_of(size: int) -> str:
    if not 1 <= size <= len(ALPHABET):
        raise ValueError(f"alphabet size must be in [1, {len(ALPHABET)}]")
    return ALPHABET[:size]


def random_string(rng: np.random.Generator, n: int, alphabet: str) -> str:
    if n == 0:
        return ""
    return "".join(np.asarray(list(alphabet))[rng.integers(0, len(alphabet), n)])


def random_cost(rng: np.random.Generator) -> int:
    """A mismatch/indel weight: a small integer or a 6-digit decimal in [1, 4]."""
    if rng.random() < 0.5:
        return int(rng.choice([1, 2, 3, 5])) * SCALE
    return int(rng.integers(SCALE, 4 * SCALE + 1))


def random_weight_table(rng: np.random.Generator, alphabet: str, density: float = 0.7) -> WeightTable:
    """Random normalized table; each off-diagonal pair is overridden with probability ``density``."""
    syms = [""] + list(alphabet)
    over = {}
    for a in syms:
        for b in syms:
            if a != b and rng.random() < density:
                over[(a, b)] = random_cost(rng)
    return WeightTable(tuple(alphabet), over, random_cost(rng))


def mutate(rng: np.random.Generator, s: str, edits: int, alphabet: str) -> str:
    """Apply ``edits`` random substitutions, insertions or deletions."""
    out = list(s)
    for _ in range(edits):
        op = int(rng.integers(3))
        pos = int(rng.integers(0, len(out) + 1))
        ch = alphabet[int(rng.integers(len(alphabet)))]
        if op == 0 and pos < len(out):
            out[pos] = ch
        elif op == 1:
            out.insert(pos, ch)
        elif pos < len(out):
            del out[pos]
    return "".join(out)


@dataclass
class GenConfig:
    length: int = 1000
    pattern_length: Optional[int] = None
    sigma: int = 4
    mutation_rate: float = 0.01
    seed: int = 0


def generate_pair(cfg: GenConfig) -> tuple[str, str]:
    """(pattern, text); the pattern is a mutated substring of the text."""
    if cfg.length < 1 or cfg.sigma < 1 or cfg.mutation_rate < 0:
        raise ValueError("length and sigma must be positive, mutation rate non-negative")
    rng = np.random.default_rng(cfg.seed)
    alpha = alphabet_of(cfg.sigma)
    T = random_string(rng, cfg.length, alpha)
    m = cfg.pattern_length if cfg.pattern_length is not None else max(1, cfg.length // 2)
    m = min(max(m, 1), cfg.length)
    a = int(rng.integers(0, cfg.length - m + 1))
    P = T[a:a + m]
    edits = int(round(cfg.mutation_rate * m))
    if edits:
        P = mutate(rng, P, edits, alpha) or P
    return P, T


def substitution_only(rng: np.random.Generator, s: str, edits: int, alphabet: str) -> str:
    out = list(s)
    for _ in range(edits):
        if out:
            out[int(rng.integers(len(out)))] = alphabet[int(rng.integers(len(alphabet)))]
    return "".join(out)


def random_puzzle(rng: np.random.Generator, z: int, delta: int, alphabet: str, max_tor: int,
                  extra: int = 6, noise: int = 2):
    """z fitting puzzle pieces with overlap ``delta`` and torsion at most ``max_tor``.

    Pattern pieces are consecutive windows of one random string; text pieces
    are windows of a lightly edited copy, so the stitched pair stays close.
    """
    lp = [delta + int(rng.integers(0, extra + 1)) for _ in range(z)]
    shifts = [0] * z
    budget = max_tor
    for i in rng.permutation(z):
        if budget <= 0:
            break
        s = int(rng.integers(-budget, budget + 1))
        s = max(s, delta - lp[i])
        shifts[i] = s
        budget -= abs(s)
    lt = [a + s for a, s in zip(lp, shifts)]
    P = random_string(rng, sum(lp) - (z - 1) * delta, alphabet)
    T = list(substitution_only(rng, P, noise, alphabet))
    want = sum(lt) - (z - 1) * delta
    while len(T) < want:
        T.insert(int(rng.integers(0, len(T) + 1)), alphabet[int(rng.integers(len(alphabet)))])
    while len(T) > want:
        del T[int(rng.integers(0, len(T)))]
    T = "".join(T)
    pieces = []
    a = b = 0
    for x, y in zip(lp, lt):
        pieces.append(PuzzlePiece(P[a:a + x], T[b:b + y]))
        a += x - delta
        b += y - delta
    return pieces
