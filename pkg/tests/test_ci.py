import math

import numpy as np
import numpy.testing as npt
import pytest

from slater_mps.ci import (CiCoefficients, build_ci_block_mpo, build_ci_compact_mpo,
                           ci_dense_oracle, ci_entropy_bound_check, ci_state_mps)
from slater_mps.entanglement import halfcut_entropy
from slater_mps.fermionic_mpo import jw_dense_creation, mpo_to_dense
from slater_mps.mps import mps_to_dense, occupation_index, occupations
from slater_mps.orbitals import OrbitalSet, localized_set, plane_wave_set, random_orthonormal
from slater_mps.slater import build_slater_mps, determinant_oracle
from slater_mps.tensor_core import ShapeError, ValidationError

from conftest import max_dev


def vacuum(L):
    v = np.zeros(1 << L, dtype=complex)
    v[0] = 1
    return v


def random_coeffs(rng):
    return complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))


class TestCoefficients:
    def test_requires_four_orbitals(self):
        with pytest.raises(ShapeError):
            CiCoefficients(1, 0, random_orthonormal(4, 3, 0))

    def test_requires_orthonormal(self):
        phi = np.eye(4)
        phi[0, 1] = 1
        with pytest.raises(ValidationError):
            CiCoefficients(1, 0, OrbitalSet(phi))

    def test_length_mismatch(self):
        c = CiCoefficients(1, 0, random_orthonormal(5, 4, 0))
        with pytest.raises(ShapeError):
            build_ci_compact_mpo(c, 6)


class TestBlockMpo:
    def test_bond_dimension(self):
        mpo = build_ci_block_mpo(CiCoefficients(1, 1, random_orthonormal(5, 4, 0)))
        assert all(s.shape == (2, 2, 8, 8) for s in mpo.sites)

    def test_single_blocks(self):
        o = random_orthonormal(5, 4, 1)
        m = [jw_dense_creation(row) for row in o.phi]
        assert max_dev(mpo_to_dense(build_ci_block_mpo(CiCoefficients(1, 0, o))), m[0] @ m[1]) < 1e-12
        assert max_dev(mpo_to_dense(build_ci_block_mpo(CiCoefficients(0, 1, o))), m[2] @ m[3]) < 1e-12

    def test_equal_weights_L6(self):
        c = CiCoefficients(2 ** -0.5, 2 ** -0.5, random_orthonormal(6, 4, 2))
        assert max_dev(mpo_to_dense(build_ci_block_mpo(c)), ci_dense_oracle(c)) < 1e-12


class TestCompactMpo:
    def test_sign_pattern(self):
        o = random_orthonormal(4, 4, 3)
        a, b = 0.3 + 0.1j, -0.7j
        t = build_ci_compact_mpo(CiCoefficients(a, b, o)).sites[2]
        p = o.phi[:, 2]
        assert t.shape == (2, 2, 6, 6)
        assert t[1, 0, 1, 0] == -a * p[0]
        npt.assert_array_equal(t[1, 0, 1:5, 0], [-a * p[0], -b * p[2], b * p[3], a * p[1]])
        npt.assert_array_equal(t[1, 0, 5, 1:5], [p[1], p[3], p[2], p[0]])
        npt.assert_array_equal(t[1, 1], np.diag([1, -1, -1, -1, -1, 1]))
        npt.assert_array_equal(t[0, 0], np.eye(6))
        npt.assert_array_equal(t[0, 1], np.zeros((6, 6)))

    def test_localized_sign_convention(self):
        psi = mpo_to_dense(build_ci_compact_mpo(CiCoefficients(1, 0, localized_set(4, 4)))) @ vacuum(4)
        expected = np.zeros(16)
        expected[0b1100] = 1
        assert max_dev(psi, expected) < 1e-15

    def test_matches_block_and_oracle(self):
        rng = np.random.default_rng(5)
        for k in range(20):
            L = 4 + k % 3
            c = CiCoefficients(*random_coeffs(rng), random_orthonormal(L, 4, k))
            oracle = ci_dense_oracle(c)
            assert max_dev(mpo_to_dense(build_ci_compact_mpo(c)), oracle) < 1e-12
            assert max_dev(mpo_to_dense(build_ci_block_mpo(c)), oracle) < 1e-12


class TestOracle:
    def test_two_particle_support_and_norm(self):
        rng = np.random.default_rng(6)
        for k in range(5):
            a, b = random_coeffs(rng)
            psi = ci_dense_oracle(CiCoefficients(a, b, random_orthonormal(6, 4, k))) @ vacuum(6)
            off = [i for i, s in enumerate(occupations(6)) if sum(s) != 2]
            assert np.max(np.abs(psi[off])) < 1e-14
            assert abs(np.linalg.norm(psi) - math.sqrt(abs(a) ** 2 + abs(b) ** 2)) < 1e-12

    def test_explicit_expansion_coefficient(self):
        o = random_orthonormal(4, 4, 7)
        a, b = 0.4 - 0.2j, 0.1 + 0.9j
        p = o.phi
        psi = ci_dense_oracle(CiCoefficients(a, b, o)) @ vacuum(4)
        l1, l2 = 0, 1
        coeff = (a * (p[0, l1] * p[1, l2] - p[0, l2] * p[1, l1])
                 + b * (p[2, l1] * p[3, l2] - p[2, l2] * p[3, l1]))
        assert abs(psi[0b1100] - coeff) < 1e-14

    def test_determinant_combination(self):
        o = random_orthonormal(5, 4, 8)
        a, b = 0.6, 0.8j
        psi = ci_dense_oracle(CiCoefficients(a, b, o)) @ vacuum(5)
        for occ in occupations(5):
            ref = a * determinant_oracle(o.subset([0, 1]), occ) + b * determinant_oracle(o.subset([2, 3]), occ)
            assert abs(psi[occupation_index(occ)] - ref) < 1e-13


def test_linearity():
    o = random_orthonormal(5, 4, 9)
    a1, a2, b = 0.3 + 0.2j, -1.1, 0.5j
    lhs = mpo_to_dense(build_ci_compact_mpo(CiCoefficients(a1 + a2, b, o)))
    rhs = (mpo_to_dense(build_ci_compact_mpo(CiCoefficients(a1, b, o)))
           + mpo_to_dense(build_ci_compact_mpo(CiCoefficients(a2, 0, o))))
    assert max_dev(lhs, rhs) < 1e-12


class TestStateAndEntropy:
    def test_state_mps(self):
        c = CiCoefficients(0.6, 0.8, random_orthonormal(6, 4, 10))
        mps = ci_state_mps(c)
        assert mps.max_bond_dim == 6
        assert max_dev(mps_to_dense(mps), ci_dense_oracle(c) @ vacuum(6)) < 1e-12

    def test_single_determinant_limit(self):
        o = random_orthonormal(6, 4, 11)
        rep = ci_entropy_bound_check(CiCoefficients(1, 0, o))
        slater = halfcut_entropy(build_slater_mps(o.subset([0, 1])))
        assert abs(rep.entropy.entropy_nats - slater.entropy_nats) < 1e-10
        assert rep.entropy.entropy_nats <= 2 * math.log(2) + 1e-9
        assert abs(rep.state_norm - 1) < 1e-12

    def test_left_localized_zero(self):
        phi = np.eye(8, dtype=complex)[[0, 1, 4, 5]]
        rep = ci_entropy_bound_check(CiCoefficients(1, 0, OrbitalSet(phi)))
        assert rep.entropy.entropy_nats < 1e-12

    def test_sweep_below_ln6(self):
        pw = plane_wave_set(8, 4)
        for theta in np.linspace(0, np.pi / 2, 7):
            for phase in (0, np.pi / 3):
                c = CiCoefficients(np.cos(theta), np.exp(1j * phase) * np.sin(theta), pw)
                rep = ci_entropy_bound_check(c)
                assert rep.ok
                assert rep.to_json()["bound_nats"] == math.log(6)

    def test_requires_normalized(self):
        with pytest.raises(ValidationError):
            ci_entropy_bound_check(CiCoefficients(1, 1, random_orthonormal(4, 4, 0)))

    def test_requires_even_L(self):
        with pytest.raises(ValueError):
            ci_entropy_bound_check(CiCoefficients(1, 0, random_orthonormal(5, 4, 0)))
