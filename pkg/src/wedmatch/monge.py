"""Dense cost matrices, Monge structure and (min,+) products."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import _kernels as K
from .core_text import INF
from .errors import DimensionError, InfiniteEntryError


def as_cost_matrix(A) -> np.ndarray:
    M = np.ascontiguousarray(A, dtype=np.int64)
    if M.ndim != 2:
        raise DimensionError(f"expected a 2-d matrix, got shape {M.shape}")
    return M


def is_monge(A) -> bool:
    A = as_cost_matrix(A)
    if A.shape[0] < 2 or A.shape[1] < 2:
        return True
    lhs = np.minimum(A[:-1, :-1] + A[1:, 1:], INF)
    rhs = np.minimum(A[:-1, 1:] + A[1:, :-1], INF)
    return bool(np.all(lhs <= rhs))


class CoreEntry(NamedTuple):
    i: int
    j: int
    value: int


def density(A) -> np.ndarray:
    """dens[i, j] = A[i, j+1] + A[i+1, j] - A[i, j] - A[i+1, j+1]."""
    A = as_cost_matrix(A)
    p, q = A.shape
    if p < 2 or q < 2:
        return np.zeros((max(p - 1, 0), max(q - 1, 0)), np.int64)
    if np.abs(A).max() >= 1 << 61:
        # exact big-int evaluation, then check it fits
        B = A.astype(object)
        D = B[:-1, 1:] + B[1:, :-1] - B[:-1, :-1] - B[1:, 1:]
        if any(abs(x) >= 1 << 63 for x in D.ravel()):
            raise OverflowError("density exceeds the signed 64-bit range")
        return D.astype(np.int64)
    return A[:-1, 1:] + A[1:, :-1] - A[:-1, :-1] - A[1:, 1:]


def core(A) -> list[CoreEntry]:
    D = density(A)
    ii, jj = np.nonzero(D)
    return [CoreEntry(int(i), int(j), int(D[i, j])) for i, j in zip(ii, jj)]


def delta(A) -> int:
    return int(np.count_nonzero(density(A)))


def smawk_row_minima(A) -> np.ndarray:
    """Leftmost column of each row minimum of a totally monotone matrix."""
    A = as_cost_matrix(A)
    _, idx = K.smawk_mv(A, np.zeros(A.shape[1], np.int64))
    return idx


def minplus_mat_vec_naive(A, v) -> np.ndarray:
    A = as_cost_matrix(A)
    v = np.asarray(v, dtype=np.int64)
    if A.shape[1] != v.shape[0]:
        raise DimensionError(f"{A.shape} vs vector of length {v.shape[0]}")
    if A.shape[1] == 0:
        return np.full(A.shape[0], INF, np.int64)
    return np.minimum(A + v[None, :], INF).min(axis=1)


def minplus_mat_mat_naive(A, B) -> np.ndarray:
    A, B = as_cost_matrix(A), as_cost_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"{A.shape} x {B.shape}")
    return K.naive_mm(A, B)


def minplus_mat_vec(A, v) -> np.ndarray:
    """(A ⊕ v)[i] = min_j A[i, j] + v[j] via SMAWK; A must be Monge.

    INF entries in v are fine (whole INF columns keep total monotonicity);
    a matrix with INF entries goes through the naive product.
    """
    A = as_cost_matrix(A)
    v = np.ascontiguousarray(v, dtype=np.int64)
    if v.ndim != 1 or A.shape[1] != v.shape[0]:
        raise DimensionError(f"{A.shape} vs vector of shape {v.shape}")
    if A.size and A.max() >= INF:
        return minplus_mat_vec_naive(A, v)
    vals, _ = K.smawk_mv(A, np.minimum(v, INF))
    return vals


def minplus_mat_mat(A, B) -> np.ndarray:
    """C[i, j] = min_k A[i, k] + B[k, j]; SMAWK per column when both are finite."""
    A, B = as_cost_matrix(A), as_cost_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise DimensionError(f"{A.shape} x {B.shape}")
    if A.shape[1] == 0:
        return np.full((A.shape[0], B.shape[1]), INF, np.int64)
    if (A.size and A.max() >= INF) or (B.size and B.max() >= INF):
        return K.naive_mm(A, B)
    return K.smawk_mm(A, B)


def k_equivalent(A, B, k: int) -> bool:
    A, B = as_cost_matrix(A), as_cost_matrix(B)
    if A.shape != B.shape:
        raise DimensionError(f"{A.shape} vs {B.shape}")
    return bool(np.all((A == B) | (np.minimum(A, B) >= k)))


def is_bounded_difference(A, beta: int) -> bool:
    A = as_cost_matrix(A)
    if A.size and A.max() >= INF:
        raise InfiniteEntryError("bounded-difference check needs finite entries")
    ok_h = A.shape[1] < 2 or np.abs(np.diff(A, axis=1)).max() <= beta
    ok_v = A.shape[0] < 2 or np.abs(np.diff(A, axis=0)).max() <= beta
    return bool(ok_h and ok_v)


def random_monge(rng: np.random.Generator, p: int, q: int, scale: int = 1,
                 fill: float = 0.3, top: int = 5, walk: int = 3) -> np.ndarray:
    """Nonnegative Monge matrix u[i] + v[j] + S[i, j] with a sparse nonnegative density.

    S[i, j] sums the density over rows above i and columns from j on, so its
    density is exactly the drawn one. Entries are multiples of ``scale``.
    """
    dens = rng.integers(0, top + 1, size=(max(p - 1, 0), max(q - 1, 0)))
    dens[rng.random(dens.shape) >= fill] = 0
    S = np.zeros((p, q), np.int64)
    if p > 1 and q > 1:
        # S[i, j] = sum_{i' < i, j' >= j} dens[i', j']
        tail = np.cumsum(dens[:, ::-1], axis=1)[:, ::-1]
        S[1:, :-1] = np.cumsum(tail, axis=0)
    u = np.cumsum(rng.integers(-walk, walk + 1, size=p))
    v = np.cumsum(rng.integers(-walk, walk + 1, size=q))
    A = u[:, None] + v[None, :] + S
    A -= A.min()
    return (A * scale).astype(np.int64)
