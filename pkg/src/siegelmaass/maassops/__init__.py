"""Finite-difference engine, Maass operators and identity checkers."""
from .fd import DEFAULT_FD, FDConfig, Jet, scalar_jet
from .operators import (apply_K, apply_Lambda, apply_Omega, apply_Omega_tilde, borderline_eigenvalue, d_dX,
                        d_dY, d_dZ, d_dZbar, laplacian_ab, laplacian_k_real, weight_k_eigenvalue)
from .checks import (HolomorphyLink, check_det_derivatives, check_divergence_identity, check_holomorphy_link,
                     check_K_transform, check_Lambda_transform, check_laplacian_routes, check_Omega_transform,
                     check_omega_relations, check_partial_transform, check_shift_identity, rel_residual)

__all__ = [
    "DEFAULT_FD", "FDConfig", "Jet", "scalar_jet",
    "apply_K", "apply_Lambda", "apply_Omega", "apply_Omega_tilde", "borderline_eigenvalue",
    "d_dX", "d_dY", "d_dZ", "d_dZbar", "laplacian_ab", "laplacian_k_real", "weight_k_eigenvalue",
    "HolomorphyLink", "check_det_derivatives", "check_divergence_identity", "check_holomorphy_link",
    "check_K_transform", "check_Lambda_transform", "check_laplacian_routes", "check_Omega_transform",
    "check_omega_relations", "check_partial_transform", "check_shift_identity", "rel_residual",
]
