"""Orthonormal one-body orbital sets.

An orbital set is an ``N x L`` complex matrix whose row ``alpha`` holds the
wavefunction ``phi_alpha(l)`` on the ``L`` canonical sites.  Indices are
0-based in code; the JSON file format and CLI talk about sites and orbitals
in the same row/column order.

Random sets are drawn with :func:`numpy.random.default_rng`, i.e. the PCG64
bit generator, so a given seed reproduces the same set on any platform with
the same NumPy major version.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .tensor_core import ShapeError, ValidationError

__all__ = [
    "ORTHO_TOL", "DEPENDENCE_TOL", "OrbitalSet", "OrthonormalityReport",
    "validate", "require_valid", "random_orthonormal", "plane_wave_set",
    "localized_set", "split_halves", "complete_basis",
    "orbitals_to_json", "orbitals_from_json", "load_orbitals", "save_orbitals",
]

ORTHO_TOL = 1e-10
DEPENDENCE_TOL = 1e-8


@dataclass(frozen=True)
class OrbitalSet:
    """N orbitals on L sites; ``phi[alpha, l]`` is ``phi_alpha(l)``."""

    phi: np.ndarray

    def __post_init__(self):
        phi = np.array(self.phi, dtype=complex, copy=True)
        if phi.ndim == 1:
            phi = phi[None, :]
        if phi.ndim != 2:
            raise ShapeError(f"orbitals must be an N x L matrix, got shape {phi.shape}")
        if phi.shape[1] < 1:
            raise ShapeError("orbitals need at least one site")
        if not np.all(np.isfinite(phi)):
            raise ValidationError("orbital entries must be finite")
        phi.flags.writeable = False
        object.__setattr__(self, "phi", phi)

    @property
    def N(self) -> int:
        return self.phi.shape[0]

    @property
    def L(self) -> int:
        return self.phi.shape[1]

    def gram(self) -> np.ndarray:
        """``G[a, b] = sum_l phi_a(l) conj(phi_b(l))``."""
        return self.phi @ self.phi.conj().T

    def subset(self, rows) -> "OrbitalSet":
        return OrbitalSet(self.phi[list(rows)])

    def __len__(self) -> int:
        return self.N


class OrthonormalityReport(NamedTuple):
    ok: bool
    deviation: float


def validate(orbitals: OrbitalSet, tol: float = ORTHO_TOL) -> OrthonormalityReport:
    """Largest entrywise deviation of the Gram matrix from the identity."""
    if orbitals.N == 0:
        return OrthonormalityReport(True, 0.0)
    dev = float(np.max(np.abs(orbitals.gram() - np.eye(orbitals.N))))
    return OrthonormalityReport(dev < tol, dev)


def require_valid(orbitals: OrbitalSet, tol: float = ORTHO_TOL) -> None:
    report = validate(orbitals, tol)
    if not report.ok:
        raise ValidationError(
            f"orbitals are not orthonormal: Gram deviation {report.deviation:.3e} >= {tol:g}")


def random_orthonormal(L: int, N: int, seed: int) -> OrbitalSet:
    """Haar-like random orthonormal set from i.i.d. complex Gaussians.

    The Gaussian ``L x N`` matrix is QR-factorised and the phases are fixed so
    that ``R`` has a real positive diagonal, which removes the gauge freedom.
    """
    if L < 1 or N < 0:
        raise ValueError(f"need L >= 1 and N >= 0, got L={L}, N={N}")
    if N > L:
        raise ValueError(f"cannot fit N={N} orthonormal orbitals on L={L} sites")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((L, N)) + 1j * rng.standard_normal((L, N))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    phases = np.where(np.abs(d) > 0, d / np.abs(d), 1.0)
    q = q * phases[None, :]
    return OrbitalSet(q.T.reshape(N, L))


def plane_wave_set(L: int, N: int) -> OrbitalSet:
    """The ``L/2``-periodic plane waves ``L**-0.5 * exp(4 pi i a l / L)``.

    ``a`` and ``l`` run over ``1..N`` and ``1..L``; requires even ``L`` and
    ``2N <= L`` so that the rows stay orthonormal on each half of the chain.
    """
    if L < 2 or L % 2:
        raise ValueError(f"plane waves need an even L >= 2, got L={L}")
    if N < 0 or 2 * N > L:
        raise ValueError(f"plane waves need 0 <= 2N <= L, got N={N}, L={L}")
    a = np.arange(1, N + 1)[:, None]
    sites = np.arange(1, L + 1)[None, :]
    return OrbitalSet(np.exp(4j * np.pi * a * sites / L).reshape(N, L) / np.sqrt(L))


def localized_set(L: int, N: int, offset: int = 0) -> OrbitalSet:
    """Canonical orbitals ``e_{offset+1} .. e_{offset+N}``."""
    if N < 0 or offset < 0 or offset + N > L:
        raise ValueError(f"cannot place {N} localized orbitals from offset {offset} on L={L}")
    return OrbitalSet(np.eye(L, dtype=complex)[offset:offset + N].reshape(N, L))


def split_halves(orbitals: OrbitalSet) -> tuple[OrbitalSet, OrbitalSet]:
    """Restrict every orbital to the left / right half of the chain, times sqrt(2).

    The left half is sites ``1..L/2``.  The outputs are generally *not*
    orthonormal; the plane waves of :func:`plane_wave_set` are the exception.
    """
    L = orbitals.L
    if L % 2:
        raise ValueError(f"split_halves needs an even number of sites, got L={L}")
    left = np.zeros_like(orbitals.phi)
    right = np.zeros_like(orbitals.phi)
    left[:, :L // 2] = np.sqrt(2) * orbitals.phi[:, :L // 2]
    right[:, L // 2:] = np.sqrt(2) * orbitals.phi[:, L // 2:]
    return OrbitalSet(left), OrbitalSet(right)


def complete_basis(orbitals: OrbitalSet) -> OrbitalSet:
    """Extend an orthonormal set to an ``L x L`` unitary.

    Canonical vectors ``e_1, e_2, ...`` are tried in order and orthogonalised
    (twice, for stability) against the rows collected so far; candidates whose
    residual norm falls below ``DEPENDENCE_TOL`` are skipped.
    """
    require_valid(orbitals)
    L = orbitals.L
    rows = [r for r in orbitals.phi]
    for k in range(L):
        if len(rows) == L:
            break
        v = np.zeros(L, dtype=complex)
        v[k] = 1.0
        for _ in range(2):
            for r in rows:
                v = v - np.vdot(r, v) * r
        norm = np.linalg.norm(v)
        if norm < DEPENDENCE_TOL:
            continue
        rows.append(v / norm)
    return OrbitalSet(np.array(rows).reshape(L, L))


def orbitals_to_json(orbitals: OrbitalSet) -> dict:
    return {
        "L": orbitals.L,
        "N": orbitals.N,
        "orbitals": [[[float(z.real), float(z.imag)] for z in row] for row in orbitals.phi],
    }


def orbitals_from_json(data: dict) -> OrbitalSet:
    """Parse ``{"L": int, "N": int, "orbitals": [[[re, im], ...], ...]}``."""
    try:
        L, N = int(data["L"]), int(data["N"])
        rows = data["orbitals"]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed orbital file: {exc}") from None
    if len(rows) != N:
        raise ShapeError(f"orbital file declares N={N} but holds {len(rows)} rows")
    phi = np.zeros((N, L), dtype=complex)
    for a, row in enumerate(rows):
        if len(row) != L:
            raise ShapeError(f"orbital row {a + 1} has {len(row)} entries, expected L={L}")
        for l, pair in enumerate(row):
            re, im = pair
            phi[a, l] = complex(float(re), float(im))
    if N == 0:
        phi = np.zeros((0, L), dtype=complex)
    return OrbitalSet(phi)


def load_orbitals(path: str | Path) -> OrbitalSet:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}: not valid JSON ({exc})") from None
    return orbitals_from_json(data)


def save_orbitals(orbitals: OrbitalSet, path: str | Path) -> None:
    with open(path, "w") as fh:
        json.dump(orbitals_to_json(orbitals), fh)
        fh.write("\n")
