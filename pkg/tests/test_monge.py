import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import naive_minplus
from wedmatch.core_text import INF, SCALE
from wedmatch.errors import DimensionError, InfiniteEntryError
from wedmatch.monge import (CoreEntry, core, delta, density, is_bounded_difference, is_monge,
                            k_equivalent, minplus_mat_mat, minplus_mat_vec, random_monge,
                            smawk_row_minima)


def test_is_monge_examples():
    assert is_monge(np.zeros((3, 4)))
    assert is_monge([[0, 1], [1, 0]])
    assert not is_monge([[0, 1], [2, 4]])
    assert is_monge([[INF, INF], [INF, 0]])


def test_density_examples():
    assert core(np.zeros((3, 3))) == [] and delta(np.zeros((3, 3))) == 0
    assert np.array_equal(density([[1, 0], [2, 1]]), [[0]])
    assert core([[1, 0], [2, 1]]) == []
    assert np.array_equal(density([[0, 1], [1, 0]]), [[2]])
    assert core([[0, 1], [1, 0]]) == [CoreEntry(0, 0, 2)]
    assert density([[1, 2, 3]]).shape == (0, 2)
    with pytest.raises(OverflowError):
        density(np.array([[0, 2**62], [2**62, -2**62]]))


def test_smawk_examples():
    assert smawk_row_minima([[5]]).tolist() == [0]
    assert smawk_row_minima([[1, 2], [3, 4]]).tolist() == [0, 0]
    # ties go to the smallest column
    assert smawk_row_minima([[1, 1, 2], [2, 1, 1]]).tolist() == [0, 1]


def test_product_examples():
    assert minplus_mat_vec([[1, 2], [3, 4]], [0, 5]).tolist() == [1, 3]
    assert minplus_mat_vec([[3, 1], [2, 0]], [0, 0]).tolist() == [1, 0]
    assert minplus_mat_mat([[0]], [[7]]).tolist() == [[7]]
    A = [[1, 0], [2, 1]]
    assert minplus_mat_mat(A, A).tolist() == [[2, 1], [3, 2]]
    with pytest.raises(DimensionError):
        minplus_mat_vec(A, [1, 2, 3])
    with pytest.raises(DimensionError):
        minplus_mat_mat(A, [[1, 2, 3]])


def test_k_equivalence_examples():
    A = np.array([[1, 2], [3, 4]])
    assert k_equivalent(A, A, 0)
    assert k_equivalent([[5 * SCALE]], [[7 * SCALE]], 5 * SCALE)
    assert not k_equivalent([[4 * SCALE]], [[5 * SCALE]], 5 * SCALE)
    with pytest.raises(DimensionError):
        k_equivalent(A, [[1]], 0)


def test_bounded_difference_examples():
    assert is_bounded_difference(np.full((3, 3), 7), 0)
    assert is_bounded_difference([[0, SCALE], [SCALE, 0]], SCALE)
    assert not is_bounded_difference([[0, 3]], 1)
    with pytest.raises(InfiniteEntryError):
        is_bounded_difference([[0, INF]], 10)


@given(st.integers(1, 20), st.integers(1, 20), st.integers(0, 2**32))
def test_random_monge_products(p, q, seed):
    rng = np.random.default_rng(seed)
    A = random_monge(rng, p, q, SCALE)
    r = int(rng.integers(1, 20))
    B = random_monge(rng, q, r, SCALE)
    assert is_monge(A) and is_monge(B) and A.min() >= 0
    C = minplus_mat_mat(A, B)
    assert np.array_equal(C, naive_minplus(A, B))
    assert is_monge(C)
    v = rng.integers(0, 10, q) * SCALE
    assert np.array_equal(minplus_mat_vec(A, v), (A + v[None, :]).min(axis=1))
    idx = smawk_row_minima(A)
    assert np.array_equal(idx, A.argmin(axis=1))


def test_inf_in_vector_and_matrix(rng):
    A = random_monge(rng, 6, 5)
    v = np.array([INF, 3, INF, 1, INF])
    assert np.array_equal(minplus_mat_vec(A, v), np.minimum(A + v, INF).min(axis=1))
    A2 = A.copy()
    A2[0, :] = INF
    assert np.array_equal(minplus_mat_vec(A2, v), np.minimum(A2 + v, INF).min(axis=1))


def test_submatrix_core_bound(rng):
    for _ in range(100):
        A = random_monge(rng, int(rng.integers(2, 15)), int(rng.integers(2, 15)))
        i0, j0 = int(rng.integers(0, A.shape[0] - 1)), int(rng.integers(0, A.shape[1] - 1))
        i1 = int(rng.integers(i0 + 1, A.shape[0] + 1))
        j1 = int(rng.integers(j0 + 1, A.shape[1] + 1))
        assert delta(A[i0:i1, j0:j1]) <= delta(A)


def test_congruence_of_k_equivalence(rng):
    from wedmatch.ferns import perturb_above
    for _ in range(100):
        A = random_monge(rng, 6, 7, SCALE)
        B = random_monge(rng, 7, 5, SCALE)
        k = int(rng.integers(0, 8)) * SCALE
        A2, B2 = perturb_above(A, k, rng), perturb_above(B, k, rng)
        assert k_equivalent(A, A2, k) and k_equivalent(B, B2, k)
        assert k_equivalent(minplus_mat_mat(A, B), minplus_mat_mat(A2, B2), k)
        assert k_equivalent(np.minimum(A, A), np.minimum(A2, A2), k)
