import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from slater_mps.tensor_core import (ID2, SIGMA_MINUS, SIGMA_Z, ShapeError, SizeError,
                                    ValidationError, check_dense_size, dense_cap,
                                    hermitian_eigvals, kron, matmul, partial_trace)

from conftest import random_hermitian


def test_pauli_convention():
    e0, e1 = np.array([1, 0]), np.array([0, 1])
    npt.assert_array_equal(SIGMA_Z @ e0, e0)
    npt.assert_array_equal(SIGMA_Z @ e1, -e1)
    # sigma^- creates an occupation
    npt.assert_array_equal(SIGMA_MINUS @ e0, e1)
    npt.assert_array_equal(SIGMA_MINUS @ e1, 0 * e1)


class TestMatmul:
    def test_identity(self):
        npt.assert_array_equal(matmul(ID2, ID2), ID2)

    def test_lowering_nilpotent(self):
        npt.assert_array_equal(matmul(SIGMA_MINUS, SIGMA_MINUS), np.zeros((2, 2)))

    def test_sz_times_sminus(self):
        # by hand: diag(1,-1) @ [[0,0],[1,0]] = [[0,0],[-1,0]]
        npt.assert_array_equal(matmul(SIGMA_Z, SIGMA_MINUS), -SIGMA_MINUS)

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            matmul(np.ones((2, 3)), np.ones((2, 3)))


class TestKron:
    def test_identity(self):
        npt.assert_array_equal(kron(ID2, ID2), np.eye(4))

    def test_vectors(self):
        npt.assert_array_equal(kron([1, 0], [1, 0]), [1, 0, 0, 0])

    def test_sz_sminus_block_structure(self):
        # phi_2 term of the N=2 site matrix: nonzeros at (1,0) = +1 and (3,2) = -1
        m = kron(SIGMA_Z, SIGMA_MINUS)
        expected = np.zeros((4, 4))
        expected[1, 0] = 1
        expected[3, 2] = -1
        npt.assert_array_equal(m, expected)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_associative(self, seed):
        r = np.random.default_rng(seed)
        a, b, c = (r.standard_normal((2, 2)) + 1j * r.standard_normal((2, 2)) for _ in range(3))
        assert np.max(np.abs(kron(a, kron(b, c)) - kron(kron(a, b), c))) < 1e-14


class TestHermitianEigvals:
    def test_half_identity(self):
        npt.assert_allclose(hermitian_eigvals(ID2 / 2), [0.5, 0.5])

    def test_diagonal_sorted(self):
        npt.assert_allclose(hermitian_eigvals(np.diag([0.75, 0.25])), [0.25, 0.75])

    def test_trace_identity(self, rng):
        m = random_hermitian(rng, 4)
        assert abs(hermitian_eigvals(m).sum() - np.trace(m).real) < 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            hermitian_eigvals(SIGMA_MINUS)

    def test_rejects_non_square(self):
        with pytest.raises(ShapeError):
            hermitian_eigvals(np.ones((2, 3)))


class TestPartialTrace:
    def test_product_state(self):
        npt.assert_array_equal(partial_trace([1, 0, 0, 0], 2, [1]), np.diag([1, 0]))

    def test_bell(self):
        bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
        npt.assert_allclose(partial_trace(bell, 2, [1]), ID2 / 2, atol=1e-15)
        npt.assert_allclose(partial_trace(bell, 2, [2]), ID2 / 2, atol=1e-15)

    def test_ghz_keep_two(self):
        ghz = np.zeros(8)
        ghz[0] = ghz[7] = 1 / np.sqrt(2)
        npt.assert_allclose(partial_trace(ghz, 3, [1, 2]), np.diag([0.5, 0, 0, 0.5]), atol=1e-15)

    def test_suffix_matches_explicit_sum(self, rng):
        psi = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        psi /= np.linalg.norm(psi)
        t = psi.reshape(2, 2, 2)
        expected = np.einsum("aij,akl->ijkl", t, t.conj()).reshape(4, 4)
        npt.assert_allclose(partial_trace(psi, 3, [2, 3]), expected, atol=1e-15)

    @settings(max_examples=30, deadline=None)
    @given(arrays(np.float64, 32, elements=st.floats(-1, 1)), st.integers(0, 5))
    def test_hermitian_unit_trace(self, x, k):
        if np.linalg.norm(x) < 1e-3:
            return
        psi = x / np.linalg.norm(x)
        rho = partial_trace(psi, 5, range(1, k + 1))
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
        assert abs(np.trace(rho) - 1) < 1e-12
        lam = hermitian_eigvals(rho)
        assert lam.min() >= -1e-10 and lam.max() <= 1 + 1e-10

    def test_bad_dimension(self):
        with pytest.raises(ShapeError):
            partial_trace(np.ones(6), 3, [1])

    def test_non_contiguous(self):
        with pytest.raises(ShapeError):
            partial_trace(np.ones(8) / np.sqrt(8), 3, [1, 3])


def test_env_cap_lowers_never_raises(monkeypatch):
    monkeypatch.setenv("SLATER_MPS_MAX_L", "5")
    assert dense_cap() == 5
    with pytest.raises(SizeError):
        check_dense_size(6)
    monkeypatch.setenv("SLATER_MPS_MAX_L", "40")
    assert dense_cap() == 12
    assert dense_cap(10) == 10
