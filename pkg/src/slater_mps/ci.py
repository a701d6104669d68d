"""MPOs for the two-determinant CI operator ``alpha c~1+ c~2+ + beta c~3+ c~4+``.

Two representations are provided: a bond-dimension-8 direct sum of two
stacked creation-operator pairs, and a compact bond-dimension-6 form whose
tensors are written out explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import EntropyReport, halfcut_entropy
from .fermionic_mpo import Mpo, apply_mpo_to_mps, build_creation_mpo, jw_dense_creation
from .mps import Mps, mps_to_dense, vacuum_mps
from .orbitals import OrbitalSet, require_valid
from .tensor_core import ShapeError, ValidationError, check_dense_size

__all__ = [
    "CiCoefficients", "CiEntropyReport", "compose_site_tensors",
    "build_ci_block_mpo", "build_ci_compact_mpo", "ci_dense_oracle",
    "ci_state_mps", "ci_entropy_bound_check",
]

CI_ORACLE_CAP = 10
COMPACT_DIAGONAL = np.array([1, -1, -1, -1, -1, 1], dtype=complex)


@dataclass(frozen=True)
class CiCoefficients:
    alpha: complex
    beta: complex
    orbitals: OrbitalSet

    def __post_init__(self):
        if self.orbitals.N != 4:
            raise ShapeError(f"the 2+2 operator needs exactly 4 orbitals, got {self.orbitals.N}")
        require_valid(self.orbitals)
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))


def _check_L(c: CiCoefficients, L: int | None) -> int:
    if L is None:
        return c.orbitals.L
    if L != c.orbitals.L:
        raise ShapeError(f"orbitals have {c.orbitals.L} sites, expected L={L}")
    return L


def compose_site_tensors(top: np.ndarray, bottom: np.ndarray) -> np.ndarray:
    """Site tensor of the product ``top @ bottom`` (``bottom`` acts first).

    The bond of ``top`` is the outer factor of the combined bond.
    """
    out = np.einsum("skab,krcd->sracbd", top, bottom)
    s = out.shape
    return out.reshape(2, 2, s[2] * s[3], s[4] * s[5])


def _block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    da, db = a.shape[2], b.shape[2]
    ea, eb = a.shape[3], b.shape[3]
    out = np.zeros((2, 2, da + db, ea + eb), dtype=complex)
    out[:, :, :da, :ea] = a
    out[:, :, da:, ea:] = b
    return out


def build_ci_block_mpo(c: CiCoefficients, L: int | None = None) -> Mpo:
    """Bond-dimension-8 MPO: direct sum of the c~1+c~2+ and c~3+c~4+ products.

    The weights live in the right boundary ``(alpha, beta) x |00)``; the left
    boundary is ``(1 1) x (11|``.
    """
    L = _check_L(c, L)
    mpos = [build_creation_mpo(c.orbitals.phi[a], L) for a in range(4)]
    sites = []
    for l in range(L):
        first = compose_site_tensors(mpos[0].sites[l], mpos[1].sites[l])
        second = compose_site_tensors(mpos[2].sites[l], mpos[3].sites[l])
        sites.append(_block_diag(first, second))
    pair_left = np.kron(mpos[0].beta0, mpos[1].beta0)
    pair_right = np.kron(mpos[0].betaL, mpos[1].betaL)
    beta0 = np.kron(np.ones(2), pair_left)
    betaL = np.kron(np.array([c.alpha, c.beta]), pair_right)
    return Mpo(tuple(sites), beta0, betaL)


def build_ci_compact_mpo(c: CiCoefficients, L: int | None = None) -> Mpo:
    """Bond-dimension-6 MPO with boundaries ``(5|`` and ``|0)``.

    Bond state 5 means no particle created yet, states 1-4 mean one particle
    created and 0 means both.  ``B[1,0]`` carries the first creation in its
    last row and the weighted second creation in its first column.
    """
    L = _check_L(c, L)
    phi = c.orbitals.phi
    a, b = c.alpha, c.beta
    sites = []
    for l in range(L):
        p1, p2, p3, p4 = phi[:, l]
        t = np.zeros((2, 2, 6, 6), dtype=complex)
        t[0, 0] = np.eye(6)
        t[1, 1] = np.diag(COMPACT_DIAGONAL)
        t[1, 0, 1:5, 0] = [-a * p1, -b * p3, b * p4, a * p2]
        t[1, 0, 5, 1:5] = [p2, p4, p3, p1]
        sites.append(t)
    beta0 = np.zeros(6, dtype=complex)
    beta0[5] = 1.0
    betaL = np.zeros(6, dtype=complex)
    betaL[0] = 1.0
    return Mpo(tuple(sites), beta0, betaL)


def ci_dense_oracle(c: CiCoefficients, L: int | None = None) -> np.ndarray:
    """``alpha M1 M2 + beta M3 M4`` from dense creation matrices."""
    L = _check_L(c, L)
    check_dense_size(L, CI_ORACLE_CAP)
    m = [jw_dense_creation(c.orbitals.phi[a], L) for a in range(4)]
    return c.alpha * (m[0] @ m[1]) + c.beta * (m[2] @ m[3])


def ci_state_mps(c: CiCoefficients, L: int | None = None) -> Mps:
    """Compact MPO applied to the vacuum: a bond-dimension-6 MPS of Theta|vacuum>."""
    L = _check_L(c, L)
    return apply_mpo_to_mps(build_ci_compact_mpo(c, L), vacuum_mps(L))


@dataclass(frozen=True)
class CiEntropyReport:
    entropy: EntropyReport
    bound_nats: float
    state_norm: float

    @property
    def ok(self) -> bool:
        return self.entropy.entropy_nats <= self.bound_nats + 1e-9

    def to_json(self) -> dict:
        return {**self.entropy.to_json(), "bound_nats": self.bound_nats,
                "state_norm": self.state_norm, "ok": self.ok}


def ci_entropy_bound_check(c: CiCoefficients, L: int | None = None) -> CiEntropyReport:
    """Half-cut entropy of the normalized ``Theta |vacuum>`` against ``ln 6``.

    Requires ``|alpha|^2 + |beta|^2 = 1``.
    """
    L = _check_L(c, L)
    if L % 2:
        raise ValueError(f"half-cut entropy needs even L, got {L}")
    check_dense_size(L, CI_ORACLE_CAP)
    weight = abs(c.alpha) ** 2 + abs(c.beta) ** 2
    if abs(weight - 1.0) > 1e-10:
        raise ValidationError(f"|alpha|^2 + |beta|^2 = {weight:.12g}, expected 1")
    mps = ci_state_mps(c, L)
    report = halfcut_entropy(mps)
    norm = float(np.linalg.norm(mps_to_dense(mps)))
    return CiEntropyReport(report, math.log(6), norm)
