"""Bond-dimension-2 MPOs for delocalized creation operators.

An MPO site tensor is stored as an array ``B`` of shape ``(2, 2, Dl, Dr)``
where ``B[s, r]`` is the bond matrix attached to the physical transition
``|s><r|`` (``s`` output, ``r`` input).  The operator is

    sum_{s, r} (beta0| B[1][s_1, r_1] ... B[L][s_L, r_L] |betaL) |s_1..s_L><r_1..r_L|

with the left boundary contracted as a row vector.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .mps import Mps
from .tensor_core import ID2, SIGMA_MINUS, SIGMA_Z, ShapeError, check_dense_size

__all__ = [
    "Statistics", "BoundaryMode", "BOUNDARY_VECTORS", "Mpo",
    "creation_site_tensor", "build_creation_mpo", "set_boundary_mode",
    "adjoint_mpo", "mpo_to_dense", "jw_dense_creation", "apply_mpo_to_mps",
]


@dataclass(frozen=True)
class Statistics:
    """Exchange statistics of hard-core particles.

    ``kind`` is ``"fermion"``, ``"boson"`` or ``"anyon"``; anyons carry an
    exchange ``phase`` in radians and use the phase gate
    ``exp(i phase sigma^z)``.  Note that ``anyon(pi)`` gives ``-Id``, not
    ``sigma^z``: fermions are their own kind.
    """

    kind: str = "fermion"
    phase: float = 0.0

    def __post_init__(self):
        if self.kind not in ("fermion", "boson", "anyon"):
            raise ValueError(f"unknown statistics kind {self.kind!r}")
        if self.kind != "anyon" and self.phase != 0.0:
            raise ValueError(f"{self.kind} statistics take no phase")

    @classmethod
    def fermion(cls) -> "Statistics":
        return cls("fermion")

    @classmethod
    def boson(cls) -> "Statistics":
        return cls("boson")

    @classmethod
    def anyon(cls, phase: float) -> "Statistics":
        return cls("anyon", float(phase))

    @classmethod
    def parse(cls, text: str) -> "Statistics":
        """``fermion``, ``boson`` or ``anyon:<phase in radians>``."""
        text = text.strip().lower()
        if text in ("fermion", "boson"):
            return cls(text)
        if text.startswith("anyon:"):
            return cls.anyon(float(text.split(":", 1)[1]))
        raise ValueError(f"cannot parse statistics {text!r}; use fermion, boson or anyon:<phase>")

    @property
    def W(self) -> np.ndarray:
        """Single-site exchange matrix placed on every site left of a creation."""
        if self.kind == "fermion":
            return SIGMA_Z.copy()
        if self.kind == "boson":
            return ID2.copy()
        return np.diag([np.exp(1j * self.phase), np.exp(-1j * self.phase)])

    def __str__(self) -> str:
        return f"anyon:{self.phase!r}" if self.kind == "anyon" else self.kind


class BoundaryMode(enum.Enum):
    CONSTRUCTION = "construction"
    IDENTITY = "identity"
    PARITY = "parity"
    NULL = "null"


# (left boundary bit, right boundary bit) for each mode
BOUNDARY_VECTORS = {
    BoundaryMode.CONSTRUCTION: (1, 0),
    BoundaryMode.IDENTITY: (0, 0),
    BoundaryMode.PARITY: (1, 1),
    BoundaryMode.NULL: (0, 1),
}


def _basis(bit: int, dim: int = 2) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[bit] = 1.0
    return v


@dataclass(frozen=True)
class Mpo:
    sites: tuple[np.ndarray, ...]
    beta0: np.ndarray
    betaL: np.ndarray

    def __post_init__(self):
        sites = tuple(np.asarray(b, dtype=complex) for b in self.sites)
        beta0 = np.asarray(self.beta0, dtype=complex).ravel()
        betaL = np.asarray(self.betaL, dtype=complex).ravel()
        if not sites:
            raise ShapeError("an MPO needs at least one site")
        left = beta0.size
        for l, b in enumerate(sites):
            if b.ndim != 4 or b.shape[:2] != (2, 2):
                raise ShapeError(f"site {l + 1}: expected shape (2, 2, Dl, Dr), got {b.shape}")
            if b.shape[2] != left:
                raise ShapeError(f"site {l + 1}: left bond {b.shape[2]} does not match {left}")
            left = b.shape[3]
        if betaL.size != left:
            raise ShapeError(f"right boundary has dim {betaL.size}, last bond is {left}")
        for arr in (*sites, beta0, betaL):
            arr.flags.writeable = False
        object.__setattr__(self, "sites", sites)
        object.__setattr__(self, "beta0", beta0)
        object.__setattr__(self, "betaL", betaL)

    @property
    def L(self) -> int:
        return len(self.sites)

    @property
    def bond_dim(self) -> int:
        return max(b.shape[3] for b in self.sites)

    def with_boundaries(self, beta0, betaL) -> "Mpo":
        return Mpo(self.sites, beta0, betaL)


def creation_site_tensor(value: complex, stat: Statistics) -> np.ndarray:
    """One site of the creation-operator MPO.

    The fictitious bond bit is 1 while the particle is still to be created and
    0 afterwards.  Sites passed in state 1 receive the exchange matrix ``W``,
    sites after the creation receive the identity, so entrywise

        B[0,0] = diag(1, W00)   B[0,1] = 0
        B[1,0] = value * s^-    B[1,1] = diag(1, W11)

    For fermions this is ``Id, 0, value * s^-, s^z``.
    """
    w = stat.W
    b = np.zeros((2, 2, 2, 2), dtype=complex)
    b[0, 0] = np.diag([1.0, w[0, 0]])
    b[1, 1] = np.diag([1.0, w[1, 1]])
    b[1, 0] = value * SIGMA_MINUS
    return b


def build_creation_mpo(orbital: Sequence[complex], L: int | None = None,
                       stat: Statistics = Statistics()) -> Mpo:
    """MPO of ``sum_l orbital[l] * W x ... x W x s^- x Id x ... x Id``.

    Args:
        orbital: one row of an orbital set, length ``L``.
        L: number of sites; inferred from ``orbital`` when omitted.
        stat: exchange statistics; fermions by default.

    Returns:
        Bond-dimension-2 MPO with the construction boundaries ``(1|`` and ``|0)``.
    """
    orbital = np.asarray(orbital, dtype=complex).ravel()
    if L is None:
        L = orbital.size
    if orbital.size != L:
        raise ShapeError(f"orbital has {orbital.size} entries, expected L={L}")
    sites = tuple(creation_site_tensor(v, stat) for v in orbital)
    return Mpo(sites, _basis(1), _basis(0))


def set_boundary_mode(mpo: Mpo, mode: BoundaryMode | str) -> Mpo:
    """Swap the boundary vectors of a creation MPO without touching its sites."""
    mode = BoundaryMode(mode)
    left, right = BOUNDARY_VECTORS[mode]
    return mpo.with_boundaries(_basis(left), _basis(right))


def adjoint_mpo(mpo: Mpo) -> Mpo:
    """MPO of the adjoint operator: conjugate every tensor and swap ``s`` with ``r``."""
    sites = tuple(np.conj(b.transpose(1, 0, 2, 3)) for b in mpo.sites)
    return Mpo(sites, mpo.beta0.conj(), mpo.betaL.conj())


def mpo_to_dense(mpo: Mpo) -> np.ndarray:
    """``2**L x 2**L`` matrix of an MPO, site 1 most significant."""
    check_dense_size(mpo.L)
    t = mpo.beta0[None, None, :]
    for b in mpo.sites:
        out, inp, _ = t.shape
        t = np.einsum("oia,srab->osirb", t, b).reshape(out * 2, inp * 2, b.shape[3])
    return t @ mpo.betaL


def jw_dense_creation(orbital: Sequence[complex], L: int | None = None,
                      stat: Statistics = Statistics()) -> np.ndarray:
    """Dense creation operator built term by term from Kronecker products.

    Serves as the oracle for :func:`build_creation_mpo`; it never looks at MPO
    tensors.
    """
    orbital = np.asarray(orbital, dtype=complex).ravel()
    if L is None:
        L = orbital.size
    if orbital.size != L:
        raise ShapeError(f"orbital has {orbital.size} entries, expected L={L}")
    check_dense_size(L)
    w = stat.W
    out = np.zeros((1 << L, 1 << L), dtype=complex)
    for l in range(L):
        if orbital[l] == 0:
            continue
        term = np.ones((1, 1), dtype=complex)
        for k in range(L):
            term = np.kron(term, w if k < l else SIGMA_MINUS if k == l else ID2)
        out += orbital[l] * term
    return out


def apply_mpo_to_mps(mpo: Mpo, mps: Mps) -> Mps:
    """Exact MPO-MPS product; the MPO bond becomes the outer factor of the new bond."""
    if mpo.L != mps.L:
        raise ShapeError(f"MPO has {mpo.L} sites, MPS has {mps.L}")
    sites = []
    for b, a in zip(mpo.sites, mps.sites):
        new = np.einsum("srab,rcd->sacbd", b, a)
        sites.append(new.reshape(2, b.shape[2] * a.shape[1], b.shape[3] * a.shape[2]))
    return Mps(tuple(sites), np.kron(mpo.beta0, mps.b0), np.kron(mpo.betaL, mps.bL))
