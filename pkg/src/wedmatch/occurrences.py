"""Occurrence reports, the Sellers baseline, brute force and the fern-based listings."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from . import _kernels as K
from .alignment import unweighted_alignment_lv
from .core_text import INF, SCALE, WeightTable
from .errors import SizeError
from .ferns import Fern, PuzzlePiece, restricted_distance_matrix

BF_LIMIT = 2 * 10**7


@dataclass
class OccReport:
    """Either (start, min_distance) pairs or (start, end, distance) triples."""

    mode: str
    starts: list = field(default_factory=list)
    triples: list = field(default_factory=list)

    def start_set(self) -> list[int]:
        if self.mode == "starts":
            return [i for i, _ in self.starts]
        return sorted({i for i, _, _ in self.triples})

    def as_starts(self) -> "OccReport":
        if self.mode == "starts":
            return self
        best: dict = {}
        for i, _, dist in self.triples:
            if dist < best.get(i, INF):
                best[i] = dist
        return OccReport("starts", sorted(best.items()))


def _starts_from_labels(labels: np.ndarray, k: int, shift: int = 0) -> list[tuple[int, int]]:
    hit = np.nonzero(labels <= k)[0]
    return [(int(i) + shift, int(labels[i])) for i in hit]


def sellers_labels(P: str, T: str, w: WeightTable) -> np.ndarray:
    """labels[i] = min_{j >= i} ed^w(P -> T[i..j)) for i in [0, n]."""
    w = w.covering(P, T)
    pc, tc = w.encode(P[::-1]), w.encode(T[::-1])
    row = K.dp_last_row(pc, tc, w.matrix, -len(P), len(T), True)
    return row[::-1].copy()


def sellers_starts(P: str, T: str, k: int, w: WeightTable) -> OccReport:
    """Sellers' DP on the reversed strings, so end positions there are starts here."""
    P, T = str(P), str(T)
    return OccReport("starts", _starts_from_labels(sellers_labels(P, T, w), k))


def bf_distance_table(P: str, T: str, w: WeightTable) -> np.ndarray:
    """E[i, j] = ed^w(P -> T[i..j)) for j >= i (INF below the diagonal).

    One DP per start, all starts advanced together row by row.
    """
    P, T = str(P), str(T)
    m, n = len(P), len(T)
    if (m + 1) * (n + 1) ** 2 > BF_LIMIT:
        raise SizeError("instance too large for the brute-force oracle")
    w = w.covering(P, T)
    wt = w.matrix
    pc, tc = w.encode(P), w.encode(T)
    ins = np.concatenate([[0], np.cumsum(wt[0, tc])]).astype(np.int64)
    valid = np.arange(n + 1)[None, :] >= np.arange(n + 1)[:, None]
    D = np.where(valid, ins[None, :] - ins[:, None], INF)
    for p in range(m):
        a = pc[p]
        E = np.minimum(D + wt[a, 0], INF)
        diag = np.minimum(D[:, :-1] + wt[a, tc][None, :], INF)
        E[:, 1:] = np.minimum(E[:, 1:], diag)
        E = np.where(valid, E, INF)
        # horizontal relaxation: min over t' <= t of E[t'] + ins(T[t'..t))
        E = np.minimum.accumulate(E - ins[None, :], axis=1) + ins[None, :]
        D = np.where(valid, np.minimum(E, INF), INF)
    return D


def bf_occurrences(P: str, T: str, k: int, w: WeightTable) -> OccReport:
    D = bf_distance_table(P, T, w)
    ii, jj = np.nonzero(D <= k)
    return OccReport("triples", triples=[(int(i), int(j), int(D[i, j])) for i, j in zip(ii, jj)])


def grow_fern(P: str, T: str, k: int, w: WeightTable) -> Fern:
    """A (min(n, κ), k)-fern of (P, T) with κ = ⌊k/SCALE⌋.

    If the unit distance exceeds 3κ every relevant entry exceeds k, and the
    constant matrix k + SCALE is returned. Otherwise the exact matrix.
    """
    P, T = str(P), str(T)
    kappa = k // SCALE
    delta = min(len(T), kappa)
    piece = PuzzlePiece(P, T)
    if unweighted_alignment_lv(P, T, 3 * kappa) is None:
        M = np.full((delta + 1, delta + 1), k + SCALE, np.int64)
    else:
        M = restricted_distance_matrix(piece, delta, delta, w)
    return Fern(M, delta, delta, k, "full", piece)


def list_chunks(n: int, m: int, kappa1: int) -> list[tuple[int, int]]:
    if n - m + kappa1 < 0:
        return []
    last = (n - m + kappa1) // kappa1
    return [(t * kappa1, min(m + (t + 2) * kappa1, n)) for t in range(last + 1) if t * kappa1 <= n]


def iter_all_occs(P: str, T: str, k: int, w: WeightTable) -> Iterator[tuple[int, int, int]]:
    """Stream (i, j, ed^w(P -> T[i..j))) for every distance <= k, ordered by i then j."""
    P, T = str(P), str(T)
    m = len(P)
    kappa1 = max(k // SCALE, 1)
    for a, b in list_chunks(len(T), m, kappa1):
        chunk = T[a:b]
        nt = len(chunk)
        if unweighted_alignment_lv(P, chunk, 4 * kappa1) is None:
            continue
        F = grow_fern(P, chunk, 4 * kappa1 * SCALE, w).matrix
        delta = F.shape[0] - 1
        for i in range(min(delta, kappa1 - 1) + 1):
            for j in range(delta + 1):
                end = nt - delta + j
                if end >= i and F[i, j] <= k:
                    yield a + i, a + end, int(F[i, j])


def list_all_occs(P: str, T: str, k: int, w: WeightTable) -> OccReport:
    return OccReport("triples", triples=list(iter_all_occs(P, T, k, w)))


def verify(P: str, T: str, k: int, interval: tuple[int, int], w: WeightTable) -> OccReport:
    """Starts in the closed interval [L, R] with their minimum distance, if <= k."""
    P, T = str(P), str(T)
    n = len(T)
    lo, hi = max(interval[0], 0), min(interval[1], n)
    if lo > hi:
        return OccReport("starts")
    sub = T[lo:min(n, hi + len(P) + k // SCALE)]
    best: dict = {}
    for i, _, dist in iter_all_occs(P, sub, k, w):
        if i > hi - lo:
            continue
        if dist < best.get(i, INF):
            best[i] = dist
    return OccReport("starts", [(lo + i, d) for i, d in sorted(best.items())])


def myers_scores(P: str, T: str) -> list[int]:
    """score[j] = min_i ed(P, T[i..j)) by Myers' bit-parallel recurrence."""
    m = len(P)
    if m == 0:
        return [0] * (len(T) + 1)
    full = (1 << m) - 1
    peq: dict = {}
    for i, c in enumerate(P):
        peq[c] = peq.get(c, 0) | (1 << i)
    pv, mv, score = full, 0, m
    top = 1 << (m - 1)
    out = [score]
    for c in T:
        eq = peq.get(c, 0)
        xv = eq | mv
        xh = (((eq & pv) + pv) ^ pv) | eq
        ph = mv | (~(xh | pv) & full)
        mh = pv & xh
        if ph & top:
            score += 1
        elif mh & top:
            score -= 1
        ph = (ph << 1) & full
        mh = (mh << 1) & full
        pv = mh | (~(xv | ph) & full)
        mv = ph & xv
        out.append(score)
    return out


def unweighted_occ(P: str, T: str, k: int) -> list[int]:
    """Starts of fragments within Levenshtein distance k (integer k)."""
    P, T = str(P), str(T)
    n = len(T)
    scores = myers_scores(P[::-1], T[::-1])
    return sorted(n - j for j, s in enumerate(scores) if s <= k)


def witness_ends(P: str, T: str, starts, w: WeightTable) -> list[tuple[int, int, int]]:
    """For each (i, dist) the smallest j with ed^w(P -> T[i..j)) = dist."""
    P, T = str(P), str(T)
    w = w.covering(P, T)
    pc = w.encode(P)
    m = len(P)
    out = []
    for i, dist in starts:
        kappa = dist // SCALE
        sub = w.encode(T[i:i + m + kappa])
        row = K.dp_last_row(pc, sub, w.matrix, -kappa, kappa, False)
        j = int(np.flatnonzero(row == dist)[0])
        out.append((i, i + j, int(dist)))
    return out
