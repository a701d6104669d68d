"""Von Neumann entropies of MPS states, computed from the dense statevector.

Entropies are in nats.  The reduced density matrices are built from
:func:`~slater_mps.mps.mps_to_dense` rather than from MPS canonical forms, so
these diagnostics stay independent of the tensors being checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mps import Mps, mps_to_dense
from .tensor_core import ValidationError, hermitian_eigvals, partial_trace

__all__ = [
    "EIGENVALUE_FLOOR", "EntropyReport", "vn_entropy", "cut_entropy",
    "halfcut_entropy", "halfcut_spectrum", "reduced_spectrum_check",
]

EIGENVALUE_FLOOR = 1e-14
TRACE_TOL = 1e-8
NEGATIVE_TOL = 1e-10
SPECTRUM_TOL = 1e-9


@dataclass(frozen=True)
class EntropyReport:
    cut: int
    entropy_nats: float
    bond_dim: int

    @property
    def entropy_log2(self) -> float:
        return self.entropy_nats / math.log(2)

    @property
    def within_bound(self) -> bool:
        """``S <= ln D`` at the cut, with 1e-9 slack."""
        return self.entropy_nats <= math.log(self.bond_dim) + 1e-9

    def to_json(self) -> dict:
        return {
            "cut": self.cut,
            "entropy_nats": self.entropy_nats,
            "entropy_log2": self.entropy_log2,
            "bond_dim": self.bond_dim,
        }


def vn_entropy(rho: np.ndarray) -> float:
    """``-sum lambda ln lambda`` over eigenvalues above ``EIGENVALUE_FLOOR``.

    Raises:
        ValidationError: ``rho`` is not Hermitian, not unit-trace, or has
            eigenvalues below ``-1e-10``.
    """
    lam = hermitian_eigvals(rho)
    if abs(lam.sum() - 1.0) > TRACE_TOL:
        raise ValidationError(f"density matrix has trace {lam.sum():.12g}, expected 1")
    if lam.size and lam[0] < -NEGATIVE_TOL:
        raise ValidationError(f"density matrix has negative eigenvalue {lam[0]:.3e}")
    lam = lam[lam > EIGENVALUE_FLOOR]
    return float(-np.sum(lam * np.log(lam)))


def _normalized_dense(mps: Mps) -> np.ndarray:
    psi = mps_to_dense(mps)
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValidationError("cannot take the entropy of the zero state")
    return psi / norm


def _reduced(mps: Mps, cut: int, keep: str) -> np.ndarray:
    L = mps.L
    if not 0 <= cut <= L:
        raise ValueError(f"cut must lie in [0, {L}], got {cut}")
    psi = _normalized_dense(mps)
    sites = range(1, cut + 1) if keep == "left" else range(cut + 1, L + 1)
    return partial_trace(psi, L, sites)


def cut_entropy(mps: Mps, cut: int, keep: str = "left") -> EntropyReport:
    """Entropy of sites ``1..cut`` (``keep="left"``) or ``cut+1..L`` (``"right"``)."""
    if keep not in ("left", "right"):
        raise ValueError(f"keep must be 'left' or 'right', got {keep!r}")
    rho = _reduced(mps, cut, keep)
    return EntropyReport(cut, vn_entropy(rho), mps.bond_dim_at(cut))


def halfcut_entropy(mps: Mps) -> EntropyReport:
    if mps.L % 2:
        raise ValueError(f"half-cut entropy needs an even number of sites, got L={mps.L}")
    return cut_entropy(mps, mps.L // 2)


def halfcut_spectrum(mps: Mps) -> np.ndarray:
    """Eigenvalues of the left half-chain density matrix, descending."""
    if mps.L % 2:
        raise ValueError(f"half-cut spectrum needs an even number of sites, got L={mps.L}")
    return hermitian_eigvals(_reduced(mps, mps.L // 2, "left"))[::-1]


def reduced_spectrum_check(mps: Mps, n_particles: int | None = None,
                           tol: float = SPECTRUM_TOL) -> bool:
    """True iff the half-cut spectrum is ``2**N`` copies of ``2**-N``.

    ``N`` defaults to ``log2`` of the bond dimension at the cut, which is the
    particle number for :func:`~slater_mps.slater.build_slater_mps` output.
    """
    if n_particles is None:
        n_particles = int(round(math.log2(mps.bond_dim_at(mps.L // 2))))
    lam = halfcut_spectrum(mps)
    count = 1 << n_particles
    nonzero = lam[lam > tol]
    if nonzero.size != count:
        return False
    return bool(np.all(np.abs(nonzero - 1.0 / count) < tol))
