//! L2 approximation of the Caputo fractional derivative on nonuniform time
//! meshes.
//!
//! The crate is organised bottom-up:
//!
//! - [`numkit`]: gamma function, cancellation-free power differences,
//!   adaptive Gauss–Legendre quadrature, bisection, a Jacobi eigensolver and
//!   matrix-free conjugate gradients.
//! - [`mesh`]: uniform, graded and r-variable graded time meshes, step-ratio
//!   constraint checks and the constants bounding admissible ratios.
//! - [`l2coeff`]: the L2 weights `a`, `b`, `c`, `d` (closed form and a
//!   quadrature oracle) and the discrete operator `L_k` in nodal and
//!   increment form.
//! - [`quadform`]: the lower-triangular matrix `M` of the bilinear form
//!   `B_n(u,u) = sum_k L_k u * (u^k - u^{k-1})`, its diagonal lower bound and
//!   eigenvalue-based positive-semidefiniteness certification.
//! - [`solver`]: implicit L2 time stepping for the 2D subdiffusion equation on
//!   `[0, 2*pi]^2` with homogeneous Dirichlet data.
//! - [`experiments`]: convergence tables, PSD sweeps and stability runs.
//!
//! ```
//! use l2stab::{mesh::TimeMesh, l2coeff::{FracOrder, L2Operator}};
//!
//! let mesh = TimeMesh::graded(20, 2.8, 1.0).unwrap();
//! let alpha = FracOrder::new(0.5).unwrap();
//! let op = L2Operator::new(&mesh, alpha);
//! // L2 is exact on linear functions: the Caputo derivative of t is t^{1-a}/Gamma(2-a).
//! let history: Vec<f64> = mesh.nodes()[..=10].to_vec();
//! let approx = op.apply_nodal(&history).unwrap();
//! let exact = mesh.t(10).powf(0.5) / l2stab::numkit::gamma(1.5).unwrap();
//! assert!((approx - exact).abs() < 1e-10 * exact);
//! ```

pub mod error;
pub mod experiments;
pub mod l2coeff;
pub mod mesh;
pub mod numkit;
pub mod quadform;
pub mod solver;

pub use error::{Error, Result};
