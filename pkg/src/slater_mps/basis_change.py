"""Grid network for the many-body map induced by a one-body basis change.

Row ``alpha`` of the grid is the creation MPO of orbital ``alpha`` of a full
``L x L`` orthonormal basis, with right boundary ``|0)`` and a left boundary
bit ``q_alpha``.  Rows are stacked with ``alpha = 1`` on top, so the grid
applied to the vacuum gives

    |Psi_q> = c~_1^{+ q_1} c~_2^{+ q_2} ... c~_L^{+ q_L} |vacuum>.

The grid is only ever contracted against a left boundary (a single ``q`` or a
full coefficient tensor); it is never turned into a ``2**L x 2**L`` matrix
outside the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .fermionic_mpo import Mpo, build_creation_mpo, jw_dense_creation
from .mps import occupation_index, parse_occupation
from .orbitals import OrbitalSet, require_valid
from .tensor_core import ShapeError, check_dense_size

__all__ = [
    "GRID_CAP", "BasisChangeGrid", "ContractionStats", "build_grid", "theta_state",
    "sector_contract", "transform_tensor", "inverse_transform_tensor",
    "basis_change_oracle",
]

GRID_CAP = 10


@dataclass(frozen=True)
class BasisChangeGrid:
    full_basis: OrbitalSet
    rows: tuple[Mpo, ...]

    @property
    def L(self) -> int:
        return self.full_basis.L


@dataclass
class ContractionStats:
    """Counts coefficients touched while sweeping the grid."""

    coefficients: int = 0
    steps: int = 0
    per_column: list[int] = field(default_factory=list)


def build_grid(full_basis: OrbitalSet) -> BasisChangeGrid:
    if full_basis.N != full_basis.L:
        raise ValueError(f"the grid needs a square basis, got N={full_basis.N}, L={full_basis.L}")
    require_valid(full_basis)
    rows = tuple(build_creation_mpo(full_basis.phi[a], full_basis.L) for a in range(full_basis.L))
    return BasisChangeGrid(full_basis, rows)


def _sweep(grid: BasisChangeGrid, boundary: np.ndarray, active: Sequence[int],
           stats: ContractionStats | None) -> np.ndarray:
    """Contract the grid column by column.

    ``boundary`` is the left boundary over the bond bits of the ``active``
    rows (first active row most significant).  Rows not listed are pinned to
    bond state ``|0)`` on both ends, where they act as the identity.
    Within a column the physical wire starts in ``|0>`` at the bottom and
    passes through the active rows from the last to the first.
    """
    L = grid.L
    R = len(active)
    psi = np.asarray(boundary, dtype=complex).reshape(1, 1 << R)
    for l in range(L):
        P = psi.shape[0]
        col = np.zeros((P, 2, 1 << R), dtype=complex)
        col[:, 0, :] = psi
        touched = 0
        for pos in reversed(range(R)):
            b = grid.rows[active[pos]].sites[l]
            view = col.reshape(P, 2, 1 << pos, 2, 1 << (R - pos - 1))
            col = np.einsum("prxay,srab->psxby", view, b).reshape(P, 2, 1 << R)
            touched += col.size
        if stats is not None:
            stats.coefficients += touched
            stats.steps += R
            stats.per_column.append(touched)
        psi = col.reshape(P * 2, 1 << R)
    # every row closes on |0), i.e. bond configuration 0
    return psi[:, 0].copy()


def _q_bits(grid: BasisChangeGrid, q) -> tuple[int, ...]:
    bits = parse_occupation(q)
    if len(bits) != grid.L:
        raise ShapeError(f"q has {len(bits)} bits, grid has L={grid.L}")
    return bits


def theta_state(grid: BasisChangeGrid, q: str | Sequence[int],
                stats: ContractionStats | None = None) -> np.ndarray:
    """Dense ``|Psi_q>`` from a contraction over the full ``2**L`` bond space."""
    check_dense_size(grid.L, GRID_CAP)
    bits = _q_bits(grid, q)
    boundary = np.zeros(1 << grid.L, dtype=complex)
    boundary[occupation_index(bits)] = 1.0
    return _sweep(grid, boundary, list(range(grid.L)), stats)


def sector_contract(grid: BasisChangeGrid, q: str | Sequence[int],
                    stats: ContractionStats | None = None) -> np.ndarray:
    """Same as :func:`theta_state`, tracking only bond states allowed by ``q``.

    A row's bond bit counts the particle it still has to create, which can
    only go from ``q_alpha`` down to 0.  Rows with ``q_alpha = 0`` therefore
    never leave ``|0)`` and are dropped; the remaining ``popcount(q)`` rows
    start fully pending.
    """
    check_dense_size(grid.L, GRID_CAP)
    bits = _q_bits(grid, q)
    active = [a for a, b in enumerate(bits) if b]
    boundary = np.zeros(1 << len(active), dtype=complex)
    boundary[-1] = 1.0
    return _sweep(grid, boundary, active, stats)


def transform_tensor(grid: BasisChangeGrid, t_new: np.ndarray) -> np.ndarray:
    """Coefficients in the canonical basis from coefficients in the new one.

    ``T_old[s] = sum_q <s|Psi_q> T_new[q]``, obtained by using ``T_new`` as the
    left boundary of the grid.
    """
    check_dense_size(grid.L, GRID_CAP)
    t_new = np.asarray(t_new, dtype=complex).ravel()
    if t_new.size != 1 << grid.L:
        raise ShapeError(f"T_new has {t_new.size} entries, expected 2**{grid.L}")
    return _sweep(grid, t_new, list(range(grid.L)), None)


def inverse_transform_tensor(grid: BasisChangeGrid, t_old: np.ndarray) -> np.ndarray:
    """Adjoint map ``T_new = U^+ T_old``.

    Canonical creation operators expand in the new ones with the conjugate
    transposed coefficients, so this is the grid of the adjoint basis.
    """
    inverse = build_grid(OrbitalSet(grid.full_basis.phi.conj().T))
    return transform_tensor(inverse, t_old)


def basis_change_oracle(full_basis: OrbitalSet) -> np.ndarray:
    """Dense ``[<s|Psi_q>]_{s,q}`` from products of dense creation matrices."""
    L = full_basis.L
    check_dense_size(L, GRID_CAP)
    mats = [jw_dense_creation(full_basis.phi[a], L) for a in range(full_basis.N)]
    dim = 1 << L
    out = np.zeros((dim, dim), dtype=complex)
    for qi in range(dim):
        psi = np.zeros(dim, dtype=complex)
        psi[0] = 1.0
        for a in reversed(range(L)):
            if (qi >> (L - 1 - a)) & 1:
                psi = mats[a] @ psi
        out[:, qi] = psi
    return out
