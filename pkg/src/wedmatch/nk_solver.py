"""The O~(nk) matcher: chunking, unit-cost filtering, d-slices and DMVO.

Within a chunk S, an unweighted alignment A of P onto S with at most d edits
fixes a band of the alignment graph: slice i covers pattern rows
[i-2d, i+1+2d] (clipped) and the text columns A assigns to P[i]. Labels are
pushed from the last portal to the first; stretches where S copies P exactly
are answered by the DMVO index built over P against itself.
"""
from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import _kernels as K
from .alignment import Alignment, _edits_to_alignment, _lv_edits
from .core_text import INF, SCALE, LceIndex, WeightTable
from .errors import DimensionError, PreconditionError, RangeError, ShapeError
from .monge import minplus_mat_mat, minplus_mat_vec
from .occurrences import OccReport, _starts_from_labels, sellers_labels


def split_text_chunks(n: int, m: int, k: int) -> list[tuple[int, int]]:
    """Chunks [i, min(i+m+2k, n)) for i = 0, k, 2k, ... up to k * floor((n-m+k)/k)."""
    if k < 1:
        raise PreconditionError("chunk step must be >= 1")
    last = max(0, n - m + k) // k
    # when m < k the last start can overshoot n; such chunks would be empty
    return [(i * k, min(i * k + m + 2 * k, n)) for i in range(last + 1) if i * k <= n]


class _Lv:
    """LCE index over P, separator, T and the LV buffers for one threshold."""

    def __init__(self, pc: np.ndarray, tc: np.ndarray, d: int):
        self.m = len(pc)
        self.off = self.m + 1
        self.index = LceIndex(np.concatenate([pc, [0], tc]))
        self.d = d

    def costs(self, chunks) -> np.ndarray:
        st = np.array([a for a, _ in chunks], np.int64)
        en = np.array([b for _, b in chunks], np.int64)
        ix = self.index
        return K.lv_batch(ix.codes, self.m, st, en, self.off, self.d, ix.rank, ix.table, ix.logs, ix.n)

    def edits(self, a: int, b: int):
        d = self.d
        L = np.empty((d + 1, 2 * d + 5), np.int64)
        B = np.empty_like(L)
        C = np.empty((d + 1, 2 * d + 5), np.int8)
        ix = self.index
        e = K.lv_core(ix.codes, 0, self.m, self.off + a, b - a, ix.rank, ix.table, ix.logs, ix.n, d, L, B, C)
        if e < 0:
            return None
        return _lv_edits(L, B, C, int(e), (b - a) - self.m, d)


def filter_alignment(P: str, S: str, k: int) -> Optional[Alignment]:
    """Optimal unit-cost alignment of P onto S if it has at most 4k edits."""
    P, S = str(P), str(S)
    if len(S) > len(P) + 2 * k:
        raise PreconditionError("chunk longer than |P| + 2k")
    chars = {c: i + 1 for i, c in enumerate(dict.fromkeys(P + S))}
    pc = np.array([chars[c] for c in P], np.int64)
    sc = np.array([chars[c] for c in S], np.int64)
    lv = _Lv(pc, sc, 4 * k)
    edits = lv.edits(0, len(S))
    if edits is None:
        return None
    return _edits_to_alignment(edits, P, S, 0, 0, len(P), len(S), len(edits) * SCALE)


# ---------------------------------------------------------------------------
# slices


@dataclass
class SliceDecomposition:
    m: int
    d: int
    s: np.ndarray
    pure: np.ndarray

    @property
    def p_lo(self) -> np.ndarray:
        return np.maximum(0, np.arange(self.m + 1) - 2 * self.d)

    @property
    def p_hi(self) -> np.ndarray:
        return np.minimum(self.m, np.arange(self.m + 1) + 2 * self.d)

    def portal(self, i: int) -> tuple[int, int]:
        return max(0, i - 2 * self.d), min(self.m, i + 2 * self.d)

    def rows(self, j: int) -> tuple[int, int]:
        return max(0, j - 2 * self.d), min(self.m, j + 1 + 2 * self.d)


def _first_columns(edits, m: int, n: int) -> np.ndarray:
    """s[i] = first column at which the path enters row i; s[m] = n."""
    s = np.empty(m + 1, np.int64)
    s[0] = 0
    p = t = 0
    for pe, te, kind in edits:
        r = pe - p
        if te - t != r or r < 0:
            raise ShapeError("edits do not form a monotone path")
        s[p + 1: pe + 1] = np.arange(t + 1, te + 1)
        if kind == "del":
            s[pe + 1] = te
            p, t = pe + 1, te
        elif kind == "sub":
            s[pe + 1] = te + 1
            p, t = pe + 1, te + 1
        else:
            p, t = pe, te + 1
    if m - p != n - t:
        raise ShapeError("edits do not end at (m, |S|)")
    s[p + 1: m + 1] = np.arange(t + 1, n + 1)
    s[m] = n
    return s


def _slices(pc: np.ndarray, sc: np.ndarray, edits, d: int) -> SliceDecomposition:
    m, n = len(pc), len(sc)
    s = _first_columns(edits, m, n)
    pure = np.zeros(m, bool)
    if m:
        step1 = s[1:] == s[:-1] + 1
        inside = s[:-1] < n
        same = np.zeros(m, bool)
        same[inside] = pc[inside] == sc[s[:-1][inside]]
        pure = step1 & same
    return SliceDecomposition(m, d, s, pure)


def _alignment_edits(A: Alignment) -> list[tuple[int, int, str]]:
    out = []
    for bp in A.breakpoints[1:-1]:
        kind = "ins" if not bp.a else ("del" if not bp.b else "sub")
        out.append((bp.p, bp.t, kind))
    return out


def build_slices(P: str, A: Alignment, d: int, S: Optional[str] = None) -> SliceDecomposition:
    """Slice decomposition induced by a global alignment A of P onto S."""
    P = str(P)
    (p0, t0), (p1, t1) = A.start, A.end
    if (p0, t0) != (0, 0) or p1 != len(P):
        raise ShapeError("alignment must run from (0, 0) to (|P|, |S|)")
    if S is None:
        # reconstruct S from the alignment: matched and substituted characters
        S = _target_from_alignment(P, A)
    if len(S) != t1:
        raise ShapeError("alignment does not end at |S|")
    chars = {c: i + 1 for i, c in enumerate(dict.fromkeys(P + S))}
    pc = np.array([chars[c] for c in P], np.int64)
    sc = np.array([chars[c] for c in S], np.int64)
    return _slices(pc, sc, _alignment_edits(A), d)


def _target_from_alignment(P: str, A: Alignment) -> str:
    out = []
    bps = A.breakpoints
    p = 0
    for prev, cur in zip(bps, bps[1:]):
        # matched run up to cur, then cur's edit
        run = cur.p - p
        out.append(P[p: p + run])
        p += run
        if cur is bps[-1]:
            break
        if cur.b:
            out.append(cur.b)
        if cur.a:
            p += 1
    return "".join(out)


# ---------------------------------------------------------------------------
# DMVO over the self-alignment band of P


class DmvoIndex:
    """Portal-to-portal distance matrices D_{l,r} of P against itself.

    Blocks are dyadic intervals [x 2^l B, (x+1) 2^l B) of slices with base size
    B = 2^base_level. A query splits [i, j) into stepped ends and O(log m)
    blocks. With ``eager`` every block is built up front; otherwise a block
    is built once it has been requested ``reuse`` times (stepping a vector
    through it until then), which bounds the wasted work by a constant factor.
    """

    def __init__(self, pc: np.ndarray, wt: np.ndarray, back: int, d: int,
                 base_level: Optional[int] = None, eager: bool = True,
                 reuse: Optional[int] = None, max_entries: int = 200_000_000):
        if d < 1:
            raise PreconditionError("d must be >= 1")
        self.pc = np.ascontiguousarray(pc, dtype=np.int64)
        self.wt = np.ascontiguousarray(wt, dtype=np.int64)
        self.back = int(back)
        self.d = d
        self.m = len(pc)
        if base_level is None:
            base_level = 0 if eager else max(0, int(np.ceil(np.log2(2 * d + 1))))
        self.base_level = base_level
        self.B = 1 << base_level
        self.s = np.arange(self.m + 1, dtype=np.int64)
        self.reuse = (4 * d + 1) if reuse is None else reuse
        self.max_entries = max_entries
        self.stored = 0
        self.mats: dict = {}
        self.uses: dict = {}
        self._lock = threading.Lock()
        self._nosrc = np.zeros(self.m + 1, np.int64)
        if eager:
            top = 0
            while (self.B << top) <= self.m:
                top += 1
            for lev in range(top):
                span = self.B << lev
                for x in range(self.m // span):
                    self._materialize(lev, x)

    def portal(self, i: int) -> tuple[int, int]:
        return max(0, i - 2 * self.d), min(self.m, i + 2 * self.d)

    def size(self, i: int) -> int:
        lo, hi = self.portal(i)
        return hi - lo + 1

    def step(self, lo: int, hi: int, V: np.ndarray) -> np.ndarray:
        """Push labels (a vector or one label column per target) from portal hi to lo."""
        if V.ndim == 1:
            return K.sweep_vec(self.pc, self.pc, self.s, self.wt, self.back, self.d, lo, hi,
                               np.ascontiguousarray(V, dtype=np.int64), self._nosrc, False, False)
        M = np.ascontiguousarray(V, dtype=np.int64)
        return K.sweep(self.pc, self.pc, self.s, self.wt, self.back, self.d, lo, hi, M,
                       self._nosrc, False, False)

    def matrix(self, lo: int, hi: int) -> np.ndarray:
        """D_{lo,hi} computed directly by stepping the identity at portal hi."""
        n = self.size(hi)
        eye = np.full((n, n), INF, np.int64)
        np.fill_diagonal(eye, 0)
        return self.step(lo, hi, eye)

    def _materialize(self, lev: int, x: int) -> np.ndarray:
        key = (lev, x)
        M = self.mats.get(key)
        if M is not None:
            return M
        span = self.B << lev
        if lev == 0:
            M = self.matrix(x * span, (x + 1) * span)
        else:
            M = minplus_mat_mat(self._materialize(lev - 1, 2 * x),
                                self._materialize(lev - 1, 2 * x + 1))
        with self._lock:
            self.mats[key] = M
            self.stored += M.size
        return M

    def _apply(self, lev: int, x: int, v: np.ndarray) -> np.ndarray:
        key = (lev, x)
        M = self.mats.get(key)
        if M is None:
            with self._lock:
                used = self.uses.get(key, 0) + 1
                self.uses[key] = used
            span = self.B << lev
            if used >= self.reuse and self.stored < self.max_entries:
                M = self._materialize(lev, x)
            else:
                return self.step(x * span, (x + 1) * span, v)
        return minplus_mat_vec(M, v)

    def query(self, i: int, j: int, v: np.ndarray) -> np.ndarray:
        """D_{i,j} ⊕ v, for v indexed by portal j."""
        if not 0 <= i <= j <= self.m:
            raise RangeError(f"bad query interval [{i}, {j}] for m = {self.m}")
        v = np.ascontiguousarray(v, dtype=np.int64)
        if v.shape != (self.size(j),):
            raise DimensionError(f"vector of length {v.shape} for portal of size {self.size(j)}")
        if i == j:
            return v.copy()
        B = self.B
        a = -(-i // B) * B
        b = (j // B) * B
        if a >= b:
            return self.step(i, j, v)
        if b < j:
            v = self.step(b, j, v)
        pos = b
        while pos > a:
            units = pos // B
            lev = 0
            while units % (2 << lev) == 0 and pos - (B << (lev + 1)) >= a:
                lev += 1
            v = self._apply(lev, units // (1 << lev) - 1, v)
            pos -= B << lev
        if i < a:
            v = self.step(i, a, v)
        return v


def dmvo_init(P: str, d: int, w: WeightTable, eager: bool = True, **kw) -> DmvoIndex:
    w = w.covering(P)
    return DmvoIndex(w.encode(P), w.matrix, w.back, d, eager=eager, **kw)


def dmvo_query(idx: DmvoIndex, i: int, j: int, v) -> np.ndarray:
    return idx.query(i, j, np.asarray(v, dtype=np.int64))


# ---------------------------------------------------------------------------
# the boosted pass


def _boosted_labels(pc, sc, sl: SliceDecomposition, wt, back, idx: Optional[DmvoIndex]) -> np.ndarray:
    """labels[t] = distance from (0, t) to the bottom row within the band (INF if unreached)."""
    m, d = sl.m, sl.d
    n = len(sc)
    src = np.full(n + 1, INF, np.int64)
    V = np.full(sl.portal(m)[1] - sl.portal(m)[0] + 1, INF, np.int64)
    lo_c, hi_c = 2 * d + 1, m - 2 * d - 1  # center slices are [lo_c, hi_c)
    pure = sl.pure
    if idx is None:
        use = np.zeros(m, bool)
    else:
        use = pure.copy()
        use[:lo_c] = False
        use[hi_c:] = False
    # runs of equal `use` flags, processed from the right
    cuts = [0, *(np.flatnonzero(use[1:] != use[:-1]) + 1).tolist(), m]
    for a, j in zip(cuts[-2::-1], cuts[:0:-1]):
        if use[a]:
            V = idx.query(a, j, V)
        else:
            V = K.sweep_vec(pc, sc, sl.s, wt, back, d, a, j, V, src, True, True)
    return src


def boosted_occurrences(idx: DmvoIndex, P: str, S: str, A: Alignment, d: int, k: int,
                        w: WeightTable) -> OccReport:
    """Occurrences of P in S (starts with minimum distances) from an alignment with <= d edits."""
    P, S = str(P), str(S)
    m = len(P)
    if m <= 4 * d + 1:
        raise PreconditionError("needs |P| > 4d + 1")
    if k // SCALE > d:
        raise PreconditionError("needs k <= d")
    if A.edits > d:
        raise PreconditionError("alignment has more than d edits")
    if idx.d != d or idx.m != m:
        raise PreconditionError("index built for a different pattern or d")
    w = w.covering(P, S)
    pc, sc = w.encode(P), w.encode(S)
    if not np.array_equal(pc, idx.pc) or idx.back != w.back:
        raise PreconditionError("index built for a different pattern or weights")
    sl = _slices(pc, sc, _alignment_edits(A), d)
    labels = _boosted_labels(pc, sc, sl, w.matrix, w.back, idx)
    return OccReport("starts", _starts_from_labels(labels, k))


class NkMatcher:
    """Reusable solver state for one pattern, threshold and weight table."""

    def __init__(self, P: str, T: str, k: int, w: WeightTable, eager: bool = False):
        self.P, self.T = str(P), str(T)
        self.k = int(k)
        self.w = w.covering(self.P, self.T)
        self.m, self.n = len(self.P), len(self.T)
        self.kappa = self.k // SCALE
        self.kappa1 = max(self.kappa, 1)
        self.d = 4 * self.kappa1
        self.pc = self.w.encode(self.P)
        self.tc = self.w.encode(self.T)
        self.eager = eager
        self._idx: Optional[DmvoIndex] = None

    @property
    def index(self) -> DmvoIndex:
        if self._idx is None:
            self._idx = DmvoIndex(self.pc, self.w.matrix, self.w.back, self.d, eager=self.eager)
        return self._idx

    def surviving_chunks(self):
        chunks = split_text_chunks(self.n, self.m, self.kappa1)
        self.lv = _Lv(self.pc, self.tc, self.d)
        costs = self.lv.costs(chunks)
        return [c for c, e in zip(chunks, costs) if e >= 0]

    def chunk_labels(self, a: int, b: int, banded: bool = False) -> np.ndarray:
        sc = self.tc[a:b]
        if banded:
            # reversed Sellers restricted to the band -κ' <= t - p <= |S| - m + κ'
            row = K.dp_last_row(self.pc[::-1].copy(), sc[::-1].copy(), self.w.matrix,
                                -self.kappa1, (b - a) - self.m + self.kappa1, True)
            return row[::-1].copy()
        edits = self.lv.edits(a, b)
        sl = _slices(self.pc, sc, edits, self.d)
        return _boosted_labels(self.pc, sc, sl, self.w.matrix, self.w.back, self.index)

    def run(self, threads: int = 1, banded: bool = False) -> OccReport:
        if self.m == 0 or self.m > self.n + self.kappa or (not banded and self.m <= 4 * self.d + 1):
            labels = sellers_labels(self.P, self.T, self.w)
            return OccReport("starts", _starts_from_labels(labels, self.k))
        chunks = self.surviving_chunks()
        best = np.full(self.n + 1, INF, np.int64)

        def work(ab):
            a, b = ab
            return a, self.chunk_labels(a, b, banded)

        if threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(threads) as ex:
                results = list(ex.map(work, chunks))
        else:
            results = map(work, chunks)
        for a, lab in results:
            seg = best[a: a + len(lab)]
            np.minimum(seg, lab, out=seg)
        return OccReport("starts", _starts_from_labels(best, self.k))


def solve_nk(P: str, T: str, k: int, w: WeightTable, threads: int = 1) -> OccReport:
    """Occ^w_k(P, T) with per-start minimum distances."""
    if len(str(P)) < 1:
        raise PreconditionError("pattern must be nonempty")
    return NkMatcher(P, T, k, w).run(threads)


def solve_banded(P: str, T: str, k: int, w: WeightTable, threads: int = 1) -> OccReport:
    """Chunks and the unit-cost filter, then a banded DP per surviving chunk."""
    return NkMatcher(P, T, k, w).run(threads, banded=True)
