"""Exact matrix product states for Slater determinants and CI states."""

from .basis_change import (BasisChangeGrid, ContractionStats, basis_change_oracle, build_grid,
                           inverse_transform_tensor, sector_contract, theta_state,
                           transform_tensor)
from .ci import (CiCoefficients, build_ci_block_mpo, build_ci_compact_mpo, ci_dense_oracle,
                 ci_entropy_bound_check, ci_state_mps)
from .entanglement import (EntropyReport, cut_entropy, halfcut_entropy, halfcut_spectrum,
                           reduced_spectrum_check, vn_entropy)
from .fermionic_mpo import (BoundaryMode, Mpo, Statistics, adjoint_mpo, apply_mpo_to_mps,
                            build_creation_mpo, jw_dense_creation, mpo_to_dense,
                            set_boundary_mode)
from .mps import Mps, amplitude, mps_norm, mps_to_dense, vacuum_mps
from .orbitals import (OrbitalSet, complete_basis, localized_set, plane_wave_set,
                       random_orthonormal, split_halves, validate)
from .slater import anyonic_oracle, build_slater_mps, determinant_oracle, stack_slater_mps
from .tensor_core import ShapeError, SizeError, ValidationError

__version__ = "0.1.0"
