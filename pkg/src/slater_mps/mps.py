"""Open-boundary matrix product states with explicit boundary vectors.

A state on ``L`` qubits is stored as per-site tensors ``A[l]`` of shape
``(2, D_left, D_right)`` together with a left boundary row ``b0`` and a right
boundary column ``bL``; the amplitude of the configuration ``s_1 ... s_L`` is
``b0 @ A[1][s_1] @ ... @ A[L][s_L] @ bL``.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .tensor_core import ShapeError, check_dense_size

__all__ = [
    "Mps", "vacuum_mps", "amplitude", "mps_to_dense", "mps_norm",
    "parse_occupation", "format_occupation", "occupation_index",
    "occupations", "sector_occupations",
]


@dataclass(frozen=True)
class Mps:
    sites: tuple[np.ndarray, ...]
    b0: np.ndarray
    bL: np.ndarray

    def __post_init__(self):
        sites = tuple(np.asarray(a, dtype=complex) for a in self.sites)
        b0 = np.asarray(self.b0, dtype=complex).ravel()
        bL = np.asarray(self.bL, dtype=complex).ravel()
        if not sites:
            raise ShapeError("an MPS needs at least one site")
        left = b0.size
        for l, a in enumerate(sites):
            if a.ndim != 3 or a.shape[0] != 2:
                raise ShapeError(f"site {l + 1}: expected shape (2, Dl, Dr), got {a.shape}")
            if a.shape[1] != left:
                raise ShapeError(f"site {l + 1}: left bond {a.shape[1]} does not match {left}")
            left = a.shape[2]
        if bL.size != left:
            raise ShapeError(f"right boundary has dim {bL.size}, last bond is {left}")
        for arr in (*sites, b0, bL):
            arr.flags.writeable = False
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "b0", b0)
        object.__setattr__(self, "bL", bL)

    @property
    def L(self) -> int:
        return len(self.sites)

    def bond_dims(self) -> list[int]:
        """Bond dimensions ``[D_0, D_1, ..., D_L]`` including the boundaries."""
        return [self.b0.size] + [a.shape[2] for a in self.sites]

    def bond_dim_at(self, cut: int) -> int:
        """Bond dimension between site ``cut`` and ``cut + 1`` (1-based)."""
        return self.bond_dims()[cut]

    @property
    def max_bond_dim(self) -> int:
        return max(self.bond_dims())


def vacuum_mps(L: int) -> Mps:
    """``|0...0>`` as a bond-dimension-1 product state."""
    if L < 1:
        raise ValueError(f"need L >= 1, got {L}")
    site = np.zeros((2, 1, 1), dtype=complex)
    site[0, 0, 0] = 1.0
    return Mps(tuple(site for _ in range(L)), np.ones(1), np.ones(1))


def parse_occupation(occ: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(occ, str):
        if not set(occ) <= {"0", "1"}:
            raise ValueError(f"occupation string must contain only 0/1, got {occ!r}")
        return tuple(int(c) for c in occ)
    bits = tuple(int(b) for b in occ)
    if not set(bits) <= {0, 1}:
        raise ValueError(f"occupation bits must be 0 or 1, got {bits}")
    return bits


def format_occupation(occ: Sequence[int]) -> str:
    return "".join(str(int(b)) for b in occ)


def occupation_index(occ: Sequence[int]) -> int:
    """Position of a configuration in a dense vector (site 1 most significant)."""
    idx = 0
    for b in occ:
        idx = (idx << 1) | int(b)
    return idx


def occupations(L: int) -> Iterator[tuple[int, ...]]:
    """All ``2**L`` configurations in dense-vector order."""
    for idx in range(1 << L):
        yield tuple((idx >> (L - 1 - k)) & 1 for k in range(L))


def sector_occupations(L: int, N: int) -> Iterator[tuple[int, ...]]:
    """Configurations with exactly ``N`` particles, in dense-vector order."""
    out = []
    for sites in combinations(range(L), N):
        bits = [0] * L
        for s in sites:
            bits[s] = 1
        out.append(tuple(bits))
    out.sort(key=occupation_index)
    yield from out


def amplitude(mps: Mps, occ: str | Sequence[int]) -> complex:
    """Contract ``(b0| A[s_1] ... A[s_L] |bL)`` boundary-first, O(L D^2)."""
    bits = parse_occupation(occ)
    if len(bits) != mps.L:
        raise ShapeError(f"occupation has {len(bits)} sites, MPS has {mps.L}")
    v = mps.b0
    for a, s in zip(mps.sites, bits):
        v = v @ a[s]
    return complex(v @ mps.bL)


def mps_to_dense(mps: Mps) -> np.ndarray:
    """Full ``2**L`` statevector in lexicographic order, site 1 most significant."""
    check_dense_size(mps.L)
    psi = mps.b0[None, :]
    for a in mps.sites:
        psi = np.einsum("pa,sab->psb", psi, a).reshape(-1, a.shape[2])
    return psi @ mps.bL


def mps_norm(mps: Mps) -> float:
    """Norm via transfer matrices; never forms the dense vector."""
    e = np.outer(mps.b0.conj(), mps.b0)
    for a in mps.sites:
        e = np.einsum("ab,sac,sbd->cd", e, a.conj(), a)
    val = mps.bL.conj() @ e @ mps.bL
    return float(np.sqrt(max(val.real, 0.0)))
