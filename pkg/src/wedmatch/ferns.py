"""Distance matrices of (augmented) alignment graphs, puzzle pieces and ferns."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import dijkstra

from . import _kernels as K
from .core_text import INF, SCALE, WeightTable
from .errors import FitError, PreconditionError, RangeError, SizeError, TorsionError
from .monge import is_monge, k_equivalent, minplus_mat_mat

ROLES = ("full", "leading", "internal", "trailing")


@dataclass(frozen=True)
class PuzzlePiece:
    pat: str
    txt: str

    @property
    def shift(self) -> int:
        return len(self.txt) - len(self.pat)

    @property
    def tor(self) -> int:
        return abs(self.shift)


@dataclass(frozen=True)
class Fern:
    matrix: np.ndarray
    delta_in: int
    delta_out: int
    k: int
    role: str = "full"
    piece: Optional[PuzzlePiece] = None


# ---------------------------------------------------------------------------
# augmented alignment graph


def augmented_graph(X: str, Y: str, w: WeightTable) -> sp.csr_matrix:
    """Grid graph of AG^w(X, Y) plus a back edge of weight W+1 for each edge.

    Vertex (p, t) has id p * (|Y| + 1) + t. Zero-weight match edges are kept
    as explicit entries, which scipy's shortest-path routines treat as edges.
    """
    w = w.covering(X, Y)
    wt = w.matrix
    back = w.back
    xc, yc = w.encode(X), w.encode(Y)
    nx, ny = len(X), len(Y)
    P, T = np.meshgrid(np.arange(nx + 1), np.arange(ny + 1), indexing="ij")
    vid = P * (ny + 1) + T
    src, dst, cost = [], [], []

    def add(a, b, c):
        src.append(a.ravel())
        dst.append(b.ravel())
        cost.append(np.broadcast_to(c, a.shape).ravel())

    if nx:
        dl = wt[xc, 0][:, None] * np.ones((1, ny + 1), np.int64)
        add(vid[:-1, :], vid[1:, :], dl)
        add(vid[1:, :], vid[:-1, :], back)
    if ny:
        ins = np.ones((nx + 1, 1), np.int64) * wt[0, yc][None, :]
        add(vid[:, :-1], vid[:, 1:], ins)
        add(vid[:, 1:], vid[:, :-1], back)
    if nx and ny:
        sub = wt[xc[:, None], yc[None, :]]
        add(vid[:-1, :-1], vid[1:, 1:], sub)
        add(vid[1:, 1:], vid[:-1, :-1], back)
    n = (nx + 1) * (ny + 1)
    if not src:
        return sp.csr_matrix((n, n), dtype=np.float64)
    s, d, c = np.concatenate(src), np.concatenate(dst), np.concatenate(cost)
    return sp.csr_matrix((c.astype(np.float64), (s, d)), shape=(n, n))


def augmented_distances(X: str, Y: str, w: WeightTable, sources) -> np.ndarray:
    """dist from each source (p, t) to every vertex, shape (len(sources), |X|+1, |Y|+1)."""
    X, Y = str(X), str(Y)
    ny = len(Y)
    g = augmented_graph(X, Y, w)
    ids = [p * (ny + 1) + t for p, t in sources]
    D = dijkstra(g, directed=True, indices=ids)
    D = np.where(np.isfinite(D), D, INF).astype(np.int64)
    return D.reshape(len(ids), len(X) + 1, ny + 1)


def boundary_distance_matrix(X: str, Y: str, w: WeightTable, max_size: int = 512) -> np.ndarray:
    """Distances from the input boundary (left column, then top row) to the
    output boundary (bottom row, then right column) of the augmented grid."""
    X, Y = str(X), str(Y)
    nx, ny = len(X), len(Y)
    if nx + ny > max_size:
        raise SizeError(f"|X|+|Y| = {nx + ny} exceeds {max_size}")
    size = nx + ny + 1
    lam = [(nx - i, 0) if i <= nx else (0, i - nx) for i in range(size)]
    rho = [(nx, i) if i <= ny else (nx + ny - i, ny) for i in range(size)]
    D = augmented_distances(X, Y, w, lam)
    rp = np.array([r[0] for r in rho])
    rt = np.array([r[1] for r in rho])
    return D[:, rp, rt]


def restricted_distance_matrix(piece: PuzzlePiece, delta: int, nabla: int, w: WeightTable) -> np.ndarray:
    """D[i, j] = dist((0, i), (|P|, |T| - nabla + j)) in the augmented graph.

    Forward entries are edit distances to fragments; backward ones follow a
    straight monotone path down and to the left, whose cost is fixed.
    """
    pat, txt = piece.pat, piece.txt
    n = len(txt)
    if not (0 <= delta <= n and 0 <= nabla <= n):
        raise RangeError(f"delta={delta}, nabla={nabla} outside [0, {n}]")
    w = w.covering(pat, txt)
    wt = w.matrix
    pc, tc = w.encode(pat), w.encode(txt)
    dels = int(wt[pc, 0].sum())
    back = w.back
    base = n - nabla
    M = np.empty((delta + 1, nabla + 1), np.int64)
    for i in range(delta + 1):
        for j in range(nabla + 1):
            if base + j < i:
                M[i, j] = (i - base - j) * back + dels
        if base + nabla >= i:
            row = K.dp_last_row(pc, tc[i:], wt, -len(pat), n - i, False)
            j0 = max(0, i - base)
            M[i, j0:] = row[base + j0 - i: base + nabla - i + 1]
    return M


def role_piece(piece: PuzzlePiece, delta: int, role: str) -> PuzzlePiece:
    if role not in ROLES:
        raise ValueError(f"unknown role {role!r}")
    lo = delta // 2 if role in ("internal", "trailing") else 0
    hi_cut = (delta + 1) // 2 if role in ("internal", "leading") else 0
    if len(piece.pat) < lo + hi_cut:
        raise RangeError(f"pattern piece of length {len(piece.pat)} too short for delta={delta}")
    return PuzzlePiece(piece.pat[lo:len(piece.pat) - hi_cut], piece.txt)


def role_matrix(piece: PuzzlePiece, delta: int, w: WeightTable, role: str) -> np.ndarray:
    if delta > len(piece.txt):
        raise RangeError(f"text piece of length {len(piece.txt)} shorter than delta={delta}")
    return restricted_distance_matrix(role_piece(piece, delta, role), delta, delta, w)


def trim_fern(F: Fern, delta2: int, nabla2: int, k2: int) -> Fern:
    if not (0 <= delta2 <= F.delta_in and 0 <= nabla2 <= F.delta_out and k2 <= F.k):
        raise RangeError("trim parameters must not exceed the fern's")
    sub = F.matrix[: delta2 + 1, F.delta_out - nabla2: F.delta_out + 1].copy()
    return Fern(sub, delta2, nabla2, k2, F.role, F.piece)


def is_fern(F: Fern, w: WeightTable) -> bool:
    """Membership: Monge and k-equivalent to the exact matrix of its piece."""
    if F.piece is None:
        raise ValueError("fern has no piece attached")
    if F.role == "full":
        exact = restricted_distance_matrix(F.piece, F.delta_in, F.delta_out, w)
    else:
        exact = restricted_distance_matrix(role_piece(F.piece, F.delta_in, F.role),
                                           F.delta_in, F.delta_out, w)
    return is_monge(F.matrix) and k_equivalent(F.matrix, exact, F.k)


# ---------------------------------------------------------------------------
# puzzles


def fits(a: str, b: str, delta: int) -> bool:
    if len(a) < delta or len(b) < delta:
        raise PreconditionError(f"strings shorter than the overlap {delta}")
    return a[len(a) - delta:] == b[:delta]


def stitch_strings(a: str, b: str, delta: int) -> str:
    if not fits(a, b, delta):
        raise FitError("strings do not overlap on the required length")
    return a + b[delta:]


def puzzle_value(parts: Sequence[str], delta: int) -> str:
    out = parts[0]
    for nxt in parts[1:]:
        out = stitch_strings(out, nxt, delta)
    return out


def torsion(seq: Sequence[PuzzlePiece]) -> int:
    return sum(p.tor for p in seq)


def stitched_pair(seq: Sequence[PuzzlePiece], delta: int) -> PuzzlePiece:
    return PuzzlePiece(puzzle_value([p.pat for p in seq], delta),
                       puzzle_value([p.txt for p in seq], delta))


def stitched_fern_product(seq: Sequence[PuzzlePiece], delta: int, k: int, w: WeightTable,
                          factors: Optional[Sequence[np.ndarray]] = None) -> np.ndarray:
    """leading ⊕ internal ⊕ ... ⊕ trailing for a sequence of fitting pieces.

    ``factors`` may supply k-equivalent replacements for the role matrices.
    """
    if len(seq) < 2:
        raise PreconditionError("need at least two pieces")
    for a, b in zip(seq, seq[1:]):
        try:
            ok = fits(a.pat, b.pat, delta) and fits(a.txt, b.txt, delta)
        except PreconditionError as e:
            raise FitError(str(e)) from None
        if not ok:
            raise FitError("consecutive pieces do not fit")
    if k > (delta // 2 - torsion(seq)) * SCALE:
        raise TorsionError(f"k exceeds floor(delta/2) - tor = {delta // 2 - torsion(seq)}")
    if factors is None:
        roles = ["leading"] + ["internal"] * (len(seq) - 2) + ["trailing"]
        factors = [role_matrix(p, delta, w, r) for p, r in zip(seq, roles)]
    out = factors[0]
    for f in factors[1:]:
        out = minplus_mat_mat(out, f)
    return out


def perturb_above(M: np.ndarray, k: int, rng: np.random.Generator, tries: int = 20,
                  bump: int = 3 * SCALE) -> np.ndarray:
    """A Monge matrix k-equivalent to M: entries >= k raised by random amounts.

    Candidates that break the Monge property are discarded; if all tries fail
    M itself is returned.
    """
    high = M >= k
    if not high.any():
        return M.copy()
    for _ in range(tries):
        cand = M.copy()
        mask = high & (rng.random(M.shape) < 0.5)
        cand[mask] += rng.integers(0, bump + 1, size=int(mask.sum()))
        if is_monge(cand):
            return cand
    # a constant shift of a whole trailing block of rows keeps Monge; try that
    rows = np.nonzero(high.all(axis=1))[0]
    if len(rows) and rows[-1] == M.shape[0] - 1:
        start = rows[-1]
        while start - 1 in rows:
            start -= 1
        cand = M.copy()
        cand[start:] += int(rng.integers(1, bump + 1))
        if is_monge(cand):
            return cand
    return M.copy()
