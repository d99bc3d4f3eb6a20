"""Weighted edit distance, alignments and their breakpoint representation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels as K
from .core_text import INF, SCALE, Textish, WeightTable, _pair_index, as_fragment
from .errors import RangeError, ShapeError


class Breakpoint(NamedTuple):
    """Vertex (p, t) where an edit starts; '' stands for the empty symbol."""

    p: int
    a: str
    t: int
    b: str


@dataclass(frozen=True)
class Alignment:
    """An alignment stored as its breakpoints, padded by start and end vertices."""

    breakpoints: tuple
    cost: Optional[int] = None

    @property
    def start(self) -> tuple[int, int]:
        bp = self.breakpoints[0]
        return bp.p, bp.t

    @property
    def end(self) -> tuple[int, int]:
        bp = self.breakpoints[-1]
        return bp.p, bp.t

    @property
    def edits(self) -> int:
        return len(self.breakpoints) - 2

    def path(self) -> list[tuple[int, int]]:
        bps = self.breakpoints
        out = [(bps[0].p, bps[0].t)]
        for prev, cur in zip(bps, bps[1:]):
            span = max(cur.p - prev.p, cur.t - prev.t)
            for delta in range(span - 1, 0, -1):
                out.append((cur.p - delta, cur.t - delta))
            if out[-1] != (cur.p, cur.t):
                out.append((cur.p, cur.t))
        return out

    @classmethod
    def from_path(cls, path, X: Textish, Y: Textish, cost: Optional[int] = None) -> "Alignment":
        x, y = str(X), str(Y)
        p0, t0 = path[0]
        bps = [Breakpoint(p0, "", t0, "")]
        for (p, t), (p2, t2) in zip(path, path[1:]):
            dp, dt = p2 - p, t2 - t
            if dp == 1 and dt == 1:
                if x[p] != y[t]:
                    bps.append(Breakpoint(p, x[p], t, y[t]))
            elif dp == 1 and dt == 0:
                bps.append(Breakpoint(p, x[p], t, ""))
            elif dp == 0 and dt == 1:
                bps.append(Breakpoint(p, "", t, y[t]))
            else:
                raise ShapeError(f"not a unit step: {(p, t)} -> {(p2, t2)}")
        p1, t1 = path[-1]
        bps.append(Breakpoint(p1, "", t1, ""))
        return cls(tuple(bps), cost)


def _codes(w: WeightTable, *texts):
    w = w.covering(*texts)
    return w, [w.encode(t) for t in texts]


def weighted_edit_distance(X: Textish, Y: Textish, w: WeightTable) -> int:
    x, y = str(X), str(Y)
    w, (xc, yc) = _codes(w, x, y)
    return int(K.dp_last_row(xc, yc, w.matrix, -len(x), len(y), False)[len(y)])


def weighted_edit_distance_capped(X: Textish, Y: Textish, w: WeightTable, k: int) -> int:
    """ed^w(X, Y) if it is at most k, else INF; only the diagonal band is explored."""
    if k < 0:
        raise ValueError("k must be non-negative")
    x, y = str(X), str(Y)
    kappa = k // SCALE
    if abs(len(x) - len(y)) > kappa:
        return INF
    w, (xc, yc) = _codes(w, x, y)
    val = int(K.dp_last_row(xc, yc, w.matrix, -kappa, len(y) - len(x) + kappa, False)[len(y)])
    return val if val <= k else INF


def levenshtein(X: Textish, Y: Textish) -> int:
    x, y = str(X), str(Y)
    chars = {c: i + 1 for i, c in enumerate(dict.fromkeys(x + y))}
    wt = np.ones((len(chars) + 1, len(chars) + 1), np.int64)
    np.fill_diagonal(wt, 0)
    xc = np.array([chars[c] for c in x], np.int64)
    yc = np.array([chars[c] for c in y], np.int64)
    return int(K.dp_last_row(xc, yc, wt, -len(x), len(y), False)[len(y)])


def optimal_alignment(X: Textish, Y: Textish, w: WeightTable) -> tuple[int, Alignment]:
    """Cost and a canonical optimal alignment of X onto Y.

    Traceback prefers diagonal, then vertical, then horizontal steps.
    """
    x, y = str(X), str(Y)
    w, (xc, yc) = _codes(w, x, y)
    wt = w.matrix
    D = K.dp_table(xc, yc, wt)
    p, t = len(x), len(y)
    rev = [(p, t)]
    while p > 0 or t > 0:
        here = D[p, t]
        if p > 0 and t > 0 and here == D[p - 1, t - 1] + wt[xc[p - 1], yc[t - 1]]:
            p, t = p - 1, t - 1
        elif p > 0 and here == D[p - 1, t] + wt[xc[p - 1], 0]:
            p -= 1
        else:
            t -= 1
        rev.append((p, t))
    cost = int(D[len(x), len(y)])
    return cost, Alignment.from_path(rev[::-1], x, y, cost)


def alignment_cost(A: Alignment, X: Textish, Y: Textish, w: WeightTable) -> int:
    """Sum of edge weights along the expanded path of A."""
    x, y = str(X), str(Y)
    path = A.path()
    (p0, t0), (p1, t1) = path[0], path[-1]
    if p0 != 0 or p1 != len(x) or not 0 <= t0 <= t1 <= len(y):
        raise ShapeError("alignment endpoints do not match the strings")
    w = w.covering(x, y)
    total = 0
    for (p, t), (p2, t2) in zip(path, path[1:]):
        dp, dt = p2 - p, t2 - t
        if dp == 1 and dt == 1:
            total += w.w(x[p], y[t])
        elif dp == 1 and dt == 0:
            total += w.w(x[p], "")
        elif dp == 0 and dt == 1:
            total += w.w("", y[t])
        else:
            raise ShapeError(f"not a unit step: {(p, t)} -> {(p2, t2)}")
    return total


def align_image(A: Alignment, lo: int, hi: int) -> tuple[int, int]:
    """Image [y, y') of the source fragment [lo, hi) under A."""
    (x0, _), (x1, t1) = A.start, A.end
    if not x0 <= lo <= hi <= x1:
        raise RangeError(f"[{lo}, {hi}) not inside [{x0}, {x1})")
    first: dict = {}
    for p, t in A.path():
        if p not in first:
            first[p] = t
    y_lo = first[lo]
    y_hi = t1 if hi == x1 else first[hi]
    return y_lo, y_hi


# ---------------------------------------------------------------------------
# unweighted alignments


def _lv_edits(L, B, C, e: int, k: int, d: int) -> list[tuple[int, int, str]]:
    """Edits (p, t, kind) of the alignment found by lv_core, in path order."""
    off = d + 2
    out = []
    while True:
        base = int(B[e, k + off])
        if e == 0:
            break
        move = int(C[e, k + off])
        if move == 0:
            pass
        elif move == 1:
            out.append((base - 1, base - 1 + k, "sub"))
        elif move == 2:
            out.append((base - 1, base + k, "del"))
            k += 1
        else:
            out.append((base, base + k - 1, "ins"))
            k -= 1
        e -= 1
    out.reverse()
    return out


def _edits_to_alignment(edits, x: str, y: str, x0: int, y0: int, x1: int, y1: int, cost):
    bps = [Breakpoint(x0, "", y0, "")]
    for p, t, kind in edits:
        a = x[p] if kind != "ins" else ""
        b = y[t] if kind != "del" else ""
        bps.append(Breakpoint(p, a, t, b))
    bps.append(Breakpoint(x1, "", y1, ""))
    return Alignment(tuple(bps), cost)


def unweighted_alignment_lv(X: Textish, Y: Textish, d: int) -> Optional[Alignment]:
    """Optimal unit-cost alignment of X onto Y if its cost is at most d."""
    if d < 0:
        raise ValueError("d must be non-negative")
    X, Y = as_fragment(X), as_fragment(Y)
    xl, yl = len(X), len(Y)
    idx, off = _pair_index(X.base, Y.base)
    L = np.empty((d + 1, 2 * d + 5), np.int64)
    B = np.empty_like(L)
    C = np.empty((d + 1, 2 * d + 5), np.int8)
    e = K.lv_core(idx.codes, X.start, xl, off + Y.start, yl, idx.rank, idx.table, idx.logs, idx.n, d, L, B, C)
    if e < 0:
        return None
    edits = _lv_edits(L, B, C, int(e), yl - xl, d)
    return _edits_to_alignment(edits, str(X), str(Y), 0, 0, xl, yl, int(e) * SCALE)


def self_edit_distance(X: Textish, cap: int) -> int:
    """Cheapest self-alignment of X that never matches a position with itself."""
    if cap < 0:
        raise ValueError("cap must be non-negative")
    x = str(X)
    xc = np.fromiter((ord(c) for c in x), dtype=np.int64, count=len(x))
    val = int(K.selfed_dp(xc, cap))
    return val if val <= cap else INF
