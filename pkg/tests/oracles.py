"""Slow, independent reference implementations used only by the tests."""
from __future__ import annotations

import heapq
import itertools

import numpy as np

from wedmatch.core_text import INF, SCALE, WeightTable


def plain_ed(x: str, y: str, w: WeightTable) -> int:
    """Textbook quadratic DP with Python ints."""
    w = w.covering(x, y)
    D = [[0] * (len(y) + 1) for _ in range(len(x) + 1)]
    for i in range(1, len(x) + 1):
        D[i][0] = D[i - 1][0] + w.w(x[i - 1], "")
    for j in range(1, len(y) + 1):
        D[0][j] = D[0][j - 1] + w.w("", y[j - 1])
    for i in range(1, len(x) + 1):
        for j in range(1, len(y) + 1):
            D[i][j] = min(D[i - 1][j - 1] + w.w(x[i - 1], y[j - 1]),
                          D[i - 1][j] + w.w(x[i - 1], ""),
                          D[i][j - 1] + w.w("", y[j - 1]))
    return D[len(x)][len(y)]


def levenshtein_dp(x: str, y: str) -> int:
    prev = list(range(len(y) + 1))
    for i, a in enumerate(x, 1):
        cur = [i]
        for j, b in enumerate(y, 1):
            cur.append(min(prev[j - 1] + (a != b), prev[j] + 1, cur[j - 1] + 1))
        prev = cur
    return prev[-1]


def occ_by_enumeration(P: str, T: str, k: int, w: WeightTable) -> list[tuple[int, int]]:
    """(start, min distance) by running the plain DP on every fragment."""
    out = []
    for i in range(len(T) + 1):
        best = min(plain_ed(P, T[i:j], w) for j in range(i, len(T) + 1))
        if best <= k:
            out.append((i, best))
    return out


def selfed_oracle(x: str) -> int:
    """Self-alignment DP over the full grid with the main-diagonal edges removed."""
    n = len(x)
    D = [[INF] * (n + 1) for _ in range(n + 1)]
    D[0][0] = 0
    for i in range(n + 1):
        for j in range(n + 1):
            if i == j == 0:
                continue
            best = INF
            if i and D[i - 1][j] < INF:
                best = min(best, D[i - 1][j] + 1)
            if j and D[i][j - 1] < INF:
                best = min(best, D[i][j - 1] + 1)
            if i and j and i != j and x[i - 1] == x[j - 1] and D[i - 1][j - 1] < INF:
                best = min(best, D[i - 1][j - 1])
            if i and j and i != j and x[i - 1] != x[j - 1] and D[i - 1][j - 1] < INF:
                best = min(best, D[i - 1][j - 1] + 1)
            D[i][j] = best
    return D[n][n]


# ---------------------------------------------------------------------------
# shortest paths on explicit graphs


def dijkstra(adj: dict, source) -> dict:
    dist = {source: 0}
    heap = [(0, next(_tick), source)]
    while heap:
        d, _, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, c in adj.get(u, {}).items():
            nd = d + c
            if nd < dist.get(v, INF):
                dist[v] = nd
                heapq.heappush(heap, (nd, next(_tick), v))
    return dist


_tick = itertools.count()


def _add(adj, u, v, c):
    row = adj.setdefault(u, {})
    if c < row.get(v, INF):
        row[v] = c


def augmented_edges(adj, x: str, y: str, w: WeightTable, p_rng, t_rng):
    """Add the edges of the augmented grid restricted to the box p_rng x t_rng."""
    w = w.covering(x, y)
    back = w.back
    p0, p1 = p_rng
    t0, t1 = t_rng
    for p in range(p0, p1 + 1):
        for t in range(t0, t1 + 1):
            if p < p1:
                _add(adj, (p, t), (p + 1, t), w.w(x[p], ""))
                _add(adj, (p + 1, t), (p, t), back)
            if t < t1:
                _add(adj, (p, t), (p, t + 1), w.w("", y[t]))
                _add(adj, (p, t + 1), (p, t), back)
            if p < p1 and t < t1:
                _add(adj, (p, t), (p + 1, t + 1), w.w(x[p], y[t]))
                _add(adj, (p + 1, t + 1), (p, t), back)


def augmented_grid(x: str, y: str, w: WeightTable) -> dict:
    adj: dict = {}
    augmented_edges(adj, x, y, w, (0, len(x)), (0, len(y)))
    return adj


def band_graph(P: str, d: int, w: WeightTable, lo: int = 0, hi=None) -> dict:
    """Union of the d-slices lo..hi-1 of P aligned with itself (G^{P,d} by default)."""
    m = len(P)
    hi = m if hi is None else hi
    adj: dict = {}
    for j in range(lo, hi):
        rows = (max(0, j - 2 * d), min(m, j + 1 + 2 * d))
        augmented_edges(adj, P, P, w, rows, (j, j + 1))
    return adj


def portal(m: int, d: int, i: int) -> list[tuple[int, int]]:
    return [(p, i) for p in range(max(0, i - 2 * d), min(m, i + 2 * d) + 1)]


def band_matrix(adj: dict, m: int, d: int, lo: int, hi: int) -> np.ndarray:
    src, dst = portal(m, d, lo), portal(m, d, hi)
    M = np.full((len(src), len(dst)), INF, np.int64)
    for a, u in enumerate(src):
        dist = dijkstra(adj, u)
        for b, v in enumerate(dst):
            M[a, b] = dist.get(v, INF)
    return M


def naive_minplus(A, B) -> np.ndarray:
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    out = np.empty((A.shape[0], B.shape[1]), np.int64)
    for i in range(A.shape[0]):
        for j in range(B.shape[1]):
            out[i, j] = min(min(int(A[i, t]) + int(B[t, j]) for t in range(A.shape[1])), INF)
    return out


def scaled(M) -> np.ndarray:
    return np.asarray(M, dtype=np.int64) * SCALE
