import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from hyperspec.errors import ConvergenceError, DimensionTooLarge, NotSquare, NotSymmetric
from hyperspec.hypergraph import adjacency_matrix, cycle_graph, incidence_matrix
from hyperspec.linalg import (
    _round_robin,
    jacobi_eigh,
    matrix_function,
    matrix_power,
    nonsymmetric_eigenvalues_small,
    numeric_rank,
    singular_values,
    sort_complex,
    symmetric_eigenvalues,
)
from hyperspec.nbops import nb_operator_hypergraph

from conftest import cached_sample

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


def sym(a):
    return (a + a.T) / 2


class TestSymmetric:
    def test_identity(self):
        assert np.allclose(symmetric_eigenvalues(np.eye(2)), [1, 1])

    def test_two_j_minus_i(self):
        m = 2 * (np.ones((4, 4)) - np.eye(4))
        assert np.allclose(symmetric_eigenvalues(m), [6, -2, -2, -2], atol=1e-12)

    def test_sampled_top_value(self):
        h = cached_sample(30, 4, 3, 0)
        assert abs(symmetric_eigenvalues(adjacency_matrix(h))[0] - 8) < 1e-8

    def test_errors(self):
        with pytest.raises(NotSquare):
            symmetric_eigenvalues(np.ones((2, 3)))
        with pytest.raises(NotSymmetric):
            symmetric_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_non_convergence_reported(self):
        rng = np.random.default_rng(0)
        with pytest.raises(ConvergenceError):
            jacobi_eigh(sym(rng.normal(size=(30, 30))), max_sweeps=1)

    def test_one_by_one_and_diagonal(self):
        assert symmetric_eigenvalues(np.array([[3.5]])).tolist() == [3.5]
        assert symmetric_eigenvalues(np.diag([1.0, 3.0, 2.0])).tolist() == [3.0, 2.0, 1.0]

    def test_round_robin_covers_every_pair_once(self):
        for n in (2, 5, 8):
            seen = [tuple(x) for p, q in _round_robin(n) for x in zip(p, q)]
            assert sorted(seen) == [(i, j) for i in range(n) for j in range(i + 1, n)]

    @given(arrays(float, st.tuples(st.integers(1, 12), st.just(12)), elements=finite))
    def test_matches_numpy(self, raw):
        n = raw.shape[0]
        m = sym(raw[:, :n])
        ours = symmetric_eigenvalues(m)
        ref = np.sort(np.linalg.eigvalsh(m))[::-1]
        assert np.allclose(ours, ref, atol=1e-9 * max(1.0, np.abs(ref).max()))
        assert abs(ours.sum() - np.trace(m)) <= 1e-8 * n * max(1.0, np.abs(m).max())
        assert np.all(np.diff(ours) <= 0)

    @given(st.integers(0, 2**32 - 1))
    def test_eigenpairs_reconstruct(self, seed):
        m = sym(np.random.default_rng(seed).normal(size=(15, 15)))
        w, v = jacobi_eigh(m)
        scale = np.abs(w).max()
        assert np.abs(m @ v - v * w).max() < 1e-8 * scale
        assert np.allclose(v.T @ v, np.eye(15), atol=1e-10)

    def test_deterministic(self):
        m = sym(np.random.default_rng(3).normal(size=(20, 20)))
        assert symmetric_eigenvalues(m).tobytes() == symmetric_eigenvalues(m).tobytes()


class TestNonsymmetric:
    def test_rotation(self):
        vals = nonsymmetric_eigenvalues_small(np.array([[0.0, -1.0], [1.0, 0.0]]))
        assert np.allclose(sorted(vals, key=lambda z: z.imag), [-1j, 1j])

    def test_triangle_hashimoto(self):
        vals = nonsymmetric_eigenvalues_small(nb_operator_hypergraph(cycle_graph(3)))
        roots = np.exp(2j * np.pi * np.arange(3) / 3)
        for r in roots:
            assert np.sum(np.abs(vals - r) < 1e-8) == 2

    def test_cap(self):
        with pytest.raises(DimensionTooLarge):
            nonsymmetric_eigenvalues_small(np.zeros((601, 601)))
        with pytest.raises(NotSquare):
            nonsymmetric_eigenvalues_small(np.zeros((2, 3)))

    def test_bh_largest_modulus(self):
        h = cached_sample(30, 5, 3, 0)
        vals = nonsymmetric_eigenvalues_small(nb_operator_hypergraph(h))
        assert abs(abs(vals[0]) - 8) < 1e-6

    @given(st.integers(0, 2**32 - 1), st.integers(2, 25))
    def test_matches_numpy_and_trace(self, seed, n):
        m = np.random.default_rng(seed).normal(size=(n, n))
        ours = nonsymmetric_eigenvalues_small(m)
        ref = np.linalg.eigvals(m)
        assert abs(ours.sum() - np.trace(m)) < 1e-6 * n
        # conjugate pairs come together
        assert np.allclose(np.sort_complex(ours), np.sort_complex(ours.conj()), atol=1e-8)
        for z in ref:
            assert np.min(np.abs(ours - z)) < 1e-6 * max(1, abs(z))

    @given(st.integers(0, 2**32 - 1))
    def test_symmetric_input_agrees(self, seed):
        m = sym(np.random.default_rng(seed).normal(size=(20, 20)))
        a = np.sort(nonsymmetric_eigenvalues_small(m).real)
        b = np.sort(symmetric_eigenvalues(m))
        assert np.allclose(a, b, atol=1e-6)

    def test_sort_order(self):
        out = sort_complex([1, -3, 2j, -2j, 3])
        assert out.tolist() == [3, -3, 2j, -2j, 1]


class TestRank:
    def test_examples(self):
        assert numeric_rank(np.eye(3)) == 3
        assert numeric_rank(np.zeros((3, 5))) == 0
        assert numeric_rank(incidence_matrix(cycle_graph(3))) == 3
        assert numeric_rank(incidence_matrix(cycle_graph(4))) == 3

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            numeric_rank(np.eye(2), tol=0)

    @given(st.integers(0, 2**32 - 1))
    def test_singular_values_squared(self, seed):
        m = np.random.default_rng(seed).normal(size=(5, 7))
        s = singular_values(m)
        assert np.allclose(s, np.linalg.svd(m, compute_uv=False), atol=1e-10)
        top = np.sort(np.linalg.eigvalsh(m.T @ m))[::-1][:5]
        assert np.allclose(s**2, top, atol=1e-9)

    @given(st.integers(1, 6), st.integers(0, 2**32 - 1))
    def test_low_rank_products(self, r, seed):
        rng = np.random.default_rng(seed)
        m = rng.normal(size=(8, r)) @ rng.normal(size=(r, 9))
        assert numeric_rank(m) == r


def test_matrix_power_and_function():
    m = np.array([[2, 1], [1, 1]])
    assert (matrix_power(m, 5) == np.linalg.matrix_power(m, 5)).all()
    assert (matrix_power(m, 0) == np.eye(2)).all()
    with pytest.raises(ValueError):
        matrix_power(m, -1)
    assert np.allclose(matrix_function(m, lambda w: w**3), np.linalg.matrix_power(m, 3))
