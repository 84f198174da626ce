//! Polynomial model of the Fock space and Toeplitz operators on it.

mod boundary;
mod isotype;
mod kernel;
mod poly;
mod toeplitz;

pub use boundary::{
    boundary_degree, boundary_quadratic_form, boundary_residual, embed_peirce_zero, eventually_nonincreasing,
    restrict_symbol, tail_bound, BoundaryResidual, QuadraticFormLimit, BOUNDARY_TAIL_TOL,
};
pub use isotype::{FockSpace, IsotypeBasis, WeightSpace};
pub use kernel::{fock_kernel, fock_kernel_degree};
pub use poly::{fischer_norm_sq, fischer_pairing, GaussMatrix, MatrixPoly};
pub use toeplitz::{
    adjoint_brute_force, adjoint_closed_form, apply, check_multiplicativity, toeplitz_matrix, Symbol,
    ToeplitzBlockMatrix,
};
