"""Slater-determinant MPS with bond dimension ``2**N`` and brute-force oracles."""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .fermionic_mpo import (Statistics, apply_mpo_to_mps, build_creation_mpo,
                            jw_dense_creation)
from .mps import Mps, parse_occupation, vacuum_mps
from .orbitals import OrbitalSet, require_valid
from .tensor_core import SIGMA_MINUS, ShapeError, SizeError, check_dense_size, kron_all

__all__ = [
    "MAX_SLATER_N", "slater_site_tensor", "build_slater_mps", "stack_slater_mps",
    "determinant_oracle", "anyonic_oracle",
]

MAX_SLATER_N = 12
ANYONIC_ORACLE_CAP = 10


def slater_site_tensor(values: Sequence[complex], stat: Statistics = Statistics()) -> np.ndarray:
    """``A[0]`` and ``A[1]`` for one site, given ``phi_alpha(l)`` for all ``alpha``.

    The bond space is the tensor product of one qubit per orbital, orbital 1
    outermost.  For fermions this is

        A[0] = Id,   A[1] = sum_a phi_a(l) sz^(a-1) x s^- x Id^(N-a)

    and for general statistics ``sz`` and ``Id`` become ``diag(1, W11)`` and
    ``diag(1, W00)``, the bond-space factors of the stacked creation MPOs.
    """
    values = np.asarray(values, dtype=complex).ravel()
    N = values.size
    w = stat.W
    above = np.diag([1.0, w[1, 1]])
    below = np.diag([1.0, w[0, 0]])
    D = 1 << N
    a = np.zeros((2, D, D), dtype=complex)
    a[0] = kron_all([below] * N)
    for alpha in range(N):
        if values[alpha] == 0:
            continue
        a[1] += values[alpha] * kron_all([above] * alpha + [SIGMA_MINUS] + [below] * (N - alpha - 1))
    return a


def build_slater_mps(orbitals: OrbitalSet, stat: Statistics = Statistics()) -> Mps:
    """MPS of ``c~_1^+ ... c~_N^+ |vacuum>`` written down directly.

    Boundaries are ``(b0| = (1|^N`` (last basis vector) and ``|bL) = |0)^N``
    (first basis vector).

    Raises:
        ValidationError: the orbitals are not orthonormal.
    """
    require_valid(orbitals)
    N = orbitals.N
    if N < 1:
        raise ValueError("a Slater determinant needs at least one orbital")
    if N > MAX_SLATER_N:
        raise SizeError(f"bond dimension 2**{N} exceeds the dense cap 2**{MAX_SLATER_N}")
    D = 1 << N
    sites = tuple(slater_site_tensor(orbitals.phi[:, l], stat) for l in range(orbitals.L))
    b0 = np.zeros(D, dtype=complex)
    b0[-1] = 1.0
    bL = np.zeros(D, dtype=complex)
    bL[0] = 1.0
    return Mps(sites, b0, bL)


def stack_slater_mps(orbitals: OrbitalSet, stat: Statistics = Statistics()) -> Mps:
    """Same state as :func:`build_slater_mps`, by applying N creation MPOs to the vacuum.

    ``c~_N^+`` acts first, ``c~_1^+`` last, so orbital 1 ends up as the outer bond factor.
    """
    mps = vacuum_mps(orbitals.L)
    for alpha in reversed(range(orbitals.N)):
        mps = apply_mpo_to_mps(build_creation_mpo(orbitals.phi[alpha], orbitals.L, stat), mps)
    return mps


def determinant_oracle(orbitals: OrbitalSet, occ: str | Sequence[int]) -> complex:
    """Coefficient of ``occ`` in the Slater determinant, as an N x N determinant.

    Columns are the occupied sites in increasing order; configurations with the
    wrong particle number get 0.
    """
    bits = parse_occupation(occ)
    if len(bits) != orbitals.L:
        raise ShapeError(f"occupation has {len(bits)} sites, orbitals have L={orbitals.L}")
    sites = [l for l, b in enumerate(bits) if b]
    if len(sites) != orbitals.N:
        return 0j
    if orbitals.N == 0:
        return 1 + 0j
    return complex(np.linalg.det(orbitals.phi[:, sites]))


def anyonic_oracle(orbitals: OrbitalSet, stat: Statistics = Statistics(),
                   L: int | None = None) -> np.ndarray:
    """Dense ``M_1 M_2 ... M_N |0...0>`` with ``M_a`` the dense creation matrices."""
    L = orbitals.L if L is None else L
    if L != orbitals.L:
        raise ShapeError(f"orbitals live on {orbitals.L} sites, not {L}")
    check_dense_size(L, ANYONIC_ORACLE_CAP)
    psi = np.zeros(1 << L, dtype=complex)
    psi[0] = 1.0
    for alpha in reversed(range(orbitals.N)):
        psi = jw_dense_creation(orbitals.phi[alpha], L, stat) @ psi
    return psi
