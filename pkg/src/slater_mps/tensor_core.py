"""Dense complex linear algebra shared by every construction in the package.

Conventions: a single qubit is stored in the basis ``(|0>, |1>)`` where ``|0>``
is the empty level and the +1 eigenstate of ``sigma^z``.  ``SIGMA_MINUS`` maps
``|0>`` to ``|1>``, i.e. it *creates* an occupation.  Multi-site vectors are
ordered with site 1 as the most significant bit.
"""

from __future__ import annotations

import os
from collections.abc import Sequence

import numpy as np

__all__ = [
    "ShapeError", "ValidationError", "SizeError",
    "ID2", "SIGMA_Z", "SIGMA_MINUS", "SIGMA_PLUS",
    "HERMITIAN_TOL", "HARD_DENSE_CAP", "dense_cap", "check_dense_size",
    "matmul", "kron", "kron_all", "hermitian_eigvals", "partial_trace",
]


class ShapeError(ValueError):
    """Operand dimensions are incompatible."""


class ValidationError(ValueError):
    """Input violates a mathematical precondition (Hermiticity, orthonormality...)."""


class SizeError(ValueError):
    """Requested dense object exceeds the configured size cap."""


ID2 = np.eye(2, dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
SIGMA_MINUS = np.array([[0, 0], [1, 0]], dtype=complex)
SIGMA_PLUS = SIGMA_MINUS.T.copy()

for _m in (ID2, SIGMA_Z, SIGMA_MINUS, SIGMA_PLUS):
    _m.flags.writeable = False

HERMITIAN_TOL = 1e-10
HARD_DENSE_CAP = 12
MAX_L_ENV = "SLATER_MPS_MAX_L"


def dense_cap(limit: int = HARD_DENSE_CAP) -> int:
    """Largest L allowed for dense 2^L objects.

    ``limit`` is the caller's own cap; the environment variable
    ``SLATER_MPS_MAX_L`` may lower it but never raise it.
    """
    cap = min(limit, HARD_DENSE_CAP)
    env = os.environ.get(MAX_L_ENV)
    if env:
        try:
            cap = min(cap, int(env))
        except ValueError:
            raise ValidationError(f"{MAX_L_ENV} must be an integer, got {env!r}") from None
    return cap


def check_dense_size(L: int, limit: int = HARD_DENSE_CAP) -> None:
    cap = dense_cap(limit)
    if L > cap:
        raise SizeError(f"dense representation needs L <= {cap}, got L={L}")


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.ndim != 2 or b.ndim != 2:
        raise ShapeError(f"matmul expects matrices, got ndim {a.ndim} and {b.ndim}")
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with ``a`` as the outer (most significant) factor.

    Vectors are treated as column vectors, so ``kron(e0, e0)`` is again a vector.
    """
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(factors: Sequence[np.ndarray]) -> np.ndarray:
    if not factors:
        return np.ones((1, 1), dtype=complex)
    out = np.asarray(factors[0])
    for f in factors[1:]:
        out = np.kron(out, f)
    return out


def hermitian_eigvals(m: np.ndarray, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix in ascending order.

    Raises:
        ShapeError: ``m`` is not square.
        ValidationError: ``m`` deviates from its adjoint by more than ``tol``.
    """
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    if m.size and np.max(np.abs(m - m.conj().T)) > tol:
        raise ValidationError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(m)


def _num_sites(dim: int) -> int:
    L = dim.bit_length() - 1
    if dim < 1 or (1 << L) != dim:
        raise ShapeError(f"state dimension {dim} is not a power of two")
    return L


def partial_trace(state: np.ndarray, L: int, keep_sites: Sequence[int]) -> np.ndarray:
    """Reduced density matrix of a pure state on a contiguous block of sites.

    Args:
        state: statevector of dimension ``2**L``.
        L: number of sites.
        keep_sites: 1-based sites to keep; must be a prefix ``[1..k]`` or a
            suffix ``[k+1..L]`` of the chain.

    Returns:
        ``2**k x 2**k`` density matrix ``tr_rest |state><state|``.
    """
    state = np.asarray(state, dtype=complex).ravel()
    if _num_sites(state.size) != L:
        raise ShapeError(f"state of dimension {state.size} does not describe {L} sites")
    keep = sorted(keep_sites)
    k = len(keep)
    if k == 0:
        return np.array([[np.vdot(state, state)]])
    if keep == list(range(1, k + 1)):
        psi = state.reshape(1 << k, 1 << (L - k))
        return psi @ psi.conj().T
    if keep == list(range(L - k + 1, L + 1)):
        psi = state.reshape(1 << (L - k), 1 << k)
        return psi.T @ psi.conj()
    raise ShapeError(f"keep_sites must be a contiguous prefix or suffix, got {keep}")
