# navier_bie/services/__init__.py
from .geometry_service import arclength_reparametrize, builtin_curve, frame, grid_frame, rescale_wavenumbers
from .spectral_service import FourierSymbol, apply_multiplier, interpolate, rho_hat, sobolev_norm
from .kernel_service import (
    commutator_kernel,
    split_K,
    split_KT,
    split_V,
    split_V4,
    split_Vt3,
    split_Vtn,
    split_W_regular,
)
from .assembly_service import (
    assemble_R,
    assemble_system,
    assemble_system_arclength,
    assemble_system_general,
    assemble_Y,
    discrete_singular_op,
    multiplier_block_symbol,
    quadrature_matrix,
)
from .solver_service import condition_number, solve_direct, solve_gmres, spectrum
from .field_service import (
    boundary_data,
    evaluate_field,
    farfield_error,
    fundamental_matrix,
    recover_densities,
)

__all__ = [
    "arclength_reparametrize",
    "builtin_curve",
    "frame",
    "grid_frame",
    "rescale_wavenumbers",
    "FourierSymbol",
    "apply_multiplier",
    "interpolate",
    "rho_hat",
    "sobolev_norm",
    "commutator_kernel",
    "split_K",
    "split_KT",
    "split_V",
    "split_V4",
    "split_Vt3",
    "split_Vtn",
    "split_W_regular",
    "assemble_R",
    "assemble_system",
    "assemble_system_arclength",
    "assemble_system_general",
    "assemble_Y",
    "discrete_singular_op",
    "multiplier_block_symbol",
    "quadrature_matrix",
    "condition_number",
    "solve_direct",
    "solve_gmres",
    "spectrum",
    "boundary_data",
    "evaluate_field",
    "farfield_error",
    "fundamental_matrix",
    "recover_densities",
]
