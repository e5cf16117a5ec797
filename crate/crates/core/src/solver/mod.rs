//! Implicit L2 time stepping for `∂_t^α u = ε² Δu + f` on `[0, 2π]²` with
//! zero Dirichlet data and the five-point Laplacian.

mod grid;
mod scheme;

pub use grid::{h1_seminorm, laplacian_apply, Field2D, Grid2D};
pub use scheme::{
    exact_solution, manufactured_rhs, solve, step, RhsMode, SolveResult, SolverConfig, StepOutcome,
};
