use std::sync::Arc;

use crate::l2coeff::FracOrder;
use crate::mesh::{check_thm1, TimeMesh};
use crate::solver::{solve, Field2D, Grid2D, RhsMode, SolveResult, SolverConfig};
use crate::Result;

/// Multiple of `max_k ‖f^k‖` allowed on top of `‖∇_h u⁰‖` by the bound check.
pub const BOUND_FACTOR: f64 = 50.0;

/// Time profile of the forcing, multiplied by `sin x sin y` unless custom.
#[derive(Clone, Debug)]
pub enum ForcingProfile {
    Zero,
    /// `(1 + sign(sin(ω t)))`.
    SquareWave { omega: f64 },
    Custom(RhsMode),
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

impl ForcingProfile {
    fn rhs(&self) -> RhsMode {
        match self {
            ForcingProfile::Zero => RhsMode::Custom(Arc::new(|_, _, _| 0.0)),
            ForcingProfile::SquareWave { omega } => {
                let w = *omega;
                RhsMode::Custom(Arc::new(move |t, x, y| (1.0 + sign((w * t).sin())) * x.sin() * y.sin()))
            }
            ForcingProfile::Custom(m) => m.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabilitySpec {
    pub mesh: TimeMesh,
    pub alpha: FracOrder,
    pub eps: f64,
    pub grid_n: usize,
    pub profile: ForcingProfile,
    pub initial: Option<Field2D>,
}

impl StabilitySpec {
    pub fn new(mesh: TimeMesh, alpha: FracOrder) -> Self {
        StabilitySpec {
            mesh,
            alpha,
            eps: 1.0,
            grid_n: 32,
            profile: ForcingProfile::SquareWave { omega: 10.0 },
            initial: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabilitySummary {
    pub sup_h1: f64,
    pub h1_initial: f64,
    pub max_forcing: f64,
    /// `‖∇_h u⁰‖ + BOUND_FACTOR · max_k ‖f^k‖`.
    pub bound: f64,
    pub bounded: bool,
    pub first_half_max: f64,
    pub second_half_max: f64,
    /// The second half of the run peaks at most twice as high as the first.
    pub no_blowup: bool,
    /// Whether the mesh meets the ratio hypotheses of the stability result;
    /// verdicts on other meshes are diagnostic only.
    pub mesh_admissible: bool,
    pub trajectory: SolveResult,
}

/// Long solve with bounded forcing, recording the `H¹` trajectory.
pub fn run_stability(spec: &StabilitySpec) -> Result<StabilitySummary> {
    let grid = Grid2D::new(spec.grid_n)?;
    let mut cfg = SolverConfig::new(spec.alpha, spec.eps, spec.mesh.clone(), grid).with_rhs(spec.profile.rhs());
    cfg.initial = spec.initial.clone();
    let mesh_admissible = spec.mesh.n() >= 3 && check_thm1(&spec.mesh)?.pass;
    let traj = solve(&cfg)?;

    let mut max_forcing = 0.0f64;
    for k in 1..=spec.mesh.n() {
        max_forcing = max_forcing.max(crate::solver::manufactured_rhs(&cfg, k)?.l2_norm());
    }
    let h1_initial = traj.h1[0];
    let sup_h1 = traj.max_h1();
    let bound = h1_initial + BOUND_FACTOR * max_forcing;
    let half = traj.h1.len() / 2;
    let peak = |s: &[f64]| s.iter().fold(0.0f64, |m, v| m.max(*v));
    let first_half_max = peak(&traj.h1[..half.max(1)]);
    let second_half_max = peak(&traj.h1[half.max(1)..]);
    Ok(StabilitySummary {
        sup_h1,
        h1_initial,
        max_forcing,
        bound,
        bounded: sup_h1.is_finite() && sup_h1 <= bound,
        first_half_max,
        second_half_max,
        no_blowup: second_half_max <= 2.0 * first_half_max,
        mesh_admissible,
        trajectory: traj,
    })
}
