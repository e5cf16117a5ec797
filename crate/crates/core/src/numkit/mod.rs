//! Self-contained numerical primitives used throughout the crate.

mod cg;
mod eigen;
mod gamma;
mod powdiff;
mod quadrature;
mod roots;

pub use cg::{cg_solve, cg_solve_with, CgOutcome, DEFAULT_CG_REL_TOL};
pub use eigen::{sym_eigen_min, sym_eigenvalues, SymmetricMatrix};
pub use gamma::gamma;
pub use powdiff::{pow_diff, pow_diff_gap};
pub use quadrature::{
    gauss_legendre_15, integrate_endpoint_singular, integrate_endpoint_singular_tol,
    integrate_interval, integrate_smooth,
};
pub use roots::{bisect, Bracket};
