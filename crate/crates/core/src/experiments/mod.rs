//! Scripted studies: temporal convergence tables, positive semidefiniteness
//! sweeps over graded meshes, and long stability runs.

mod convergence;
mod psd_sweep;
mod stability;
mod svg;

pub use convergence::{
    observed_rates, run_convergence, ConvergenceRow, ConvergenceSpec, ConvergenceTable, MeshFamily,
};
pub use psd_sweep::{run_psd_sweep, PsdSweepResult, PsdSweepRow};
pub use stability::{run_stability, ForcingProfile, StabilitySpec, StabilitySummary};
pub use svg::convergence_svg;
