use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use super::grid::{h1_seminorm, laplacian_raw, Field2D, Grid2D};
use crate::l2coeff::{CoeffMethod, FracOrder, L2Operator};
use crate::mesh::TimeMesh;
use crate::numkit::{cg_solve_with, gamma, DEFAULT_CG_REL_TOL};
use crate::{Error, Result};

/// Source term `f(t, x, y)`.
pub type SourceFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// Right-hand side choices. The first three multiply `sin x sin y`:
///
/// * `SingleLaplacian`: `Γ(1+α) + ε² t^α`, which drops the factor 2 from
///   `-Δ(sin x sin y)` and so is not consistent with `t^α sin x sin y`
/// * `ExactManufactured`: `Γ(1+α) + 2ε² t^α`, so that `t^α sin x sin y`
///   solves the continuous problem
/// * `SemidiscreteManufactured`: `Γ(1+α) + ε² λ_h t^α`, so that it solves the
///   spatially discrete problem exactly
#[derive(Clone, Default)]
pub enum RhsMode {
    SingleLaplacian,
    ExactManufactured,
    #[default]
    SemidiscreteManufactured,
    Custom(SourceFn),
}

impl RhsMode {
    pub fn name(&self) -> &'static str {
        match self {
            RhsMode::SingleLaplacian => "single-laplacian",
            RhsMode::ExactManufactured => "exact-manufactured",
            RhsMode::SemidiscreteManufactured => "semidiscrete-manufactured",
            RhsMode::Custom(_) => "custom",
        }
    }
}

impl fmt::Debug for RhsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RhsMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single-laplacian" => Ok(RhsMode::SingleLaplacian),
            "exact-manufactured" => Ok(RhsMode::ExactManufactured),
            "semidiscrete-manufactured" => Ok(RhsMode::SemidiscreteManufactured),
            other => Err(Error::Domain(format!("unknown rhs mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolverConfig {
    pub alpha: FracOrder,
    pub eps: f64,
    pub mesh: TimeMesh,
    pub grid: Grid2D,
    pub cg_rel_tol: f64,
    pub rhs_mode: RhsMode,
    /// `u⁰`; zero when absent.
    pub initial: Option<Field2D>,
    /// Keep every `u^k` in the result.
    pub keep_history: bool,
    pub coeff_method: CoeffMethod,
}

impl SolverConfig {
    pub fn new(alpha: FracOrder, eps: f64, mesh: TimeMesh, grid: Grid2D) -> Self {
        SolverConfig {
            alpha,
            eps,
            mesh,
            grid,
            cg_rel_tol: DEFAULT_CG_REL_TOL,
            rhs_mode: RhsMode::default(),
            initial: None,
            keep_history: false,
            coeff_method: CoeffMethod::Closed,
        }
    }

    pub fn with_rhs(mut self, rhs: RhsMode) -> Self {
        self.rhs_mode = rhs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(Error::Domain(format!("eps must be positive, got {}", self.eps)));
        }
        if !(self.cg_rel_tol > 0.0 && self.cg_rel_tol <= 1e-6) {
            return Err(Error::Domain(format!("cg_rel_tol must lie in (0, 1e-6], got {}", self.cg_rel_tol)));
        }
        if let Some(u0) = &self.initial {
            if u0.grid() != self.grid {
                return Err(Error::LengthMismatch { expected: self.grid.len(), got: u0.values().len() });
            }
        }
        Ok(())
    }
}

/// `t^α sin x sin y`.
pub fn exact_solution(grid: Grid2D, alpha: FracOrder, t: f64) -> Field2D {
    Field2D::sin_sin(grid).scaled(t.powf(alpha.value()))
}

/// `f^k = f(t_k)` on the grid for the configured mode.
pub fn manufactured_rhs(config: &SolverConfig, k: usize) -> Result<Field2D> {
    if k > config.mesh.n() {
        return Err(Error::OutOfRange { index: k, lo: 0, hi: config.mesh.n() });
    }
    let t = config.mesh.t(k);
    let al = config.alpha.value();
    let e2 = config.eps * config.eps;
    let ta = t.powf(al);
    let g = gamma(1.0 + al)?;
    let amp = match &config.rhs_mode {
        RhsMode::SingleLaplacian => g + e2 * ta,
        RhsMode::ExactManufactured => g + 2.0 * e2 * ta,
        RhsMode::SemidiscreteManufactured => g + e2 * config.grid.sin_sin_eigenvalue() * ta,
        RhsMode::Custom(f) => return Ok(Field2D::from_fn(config.grid, |x, y| f(t, x, y))),
    };
    Ok(Field2D::sin_sin(config.grid).scaled(amp))
}

#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub field: Field2D,
    pub cg_iterations: usize,
}

/// Computes `u^k` from `u^0 … u^{k-1}` (`k = history.len()`) by solving
/// `(σ_k I - ε² Δ_h) u^k = f^k - Σ_{m<k} w_m u^m`, where `w_m` are the nodal
/// weights of `L_k` and `σ_k = w_k`.
pub fn step(config: &SolverConfig, op: &L2Operator<'_>, history: &[Field2D]) -> Result<StepOutcome> {
    let k = history.len();
    if k == 0 {
        return Err(Error::OutOfRange { index: 0, lo: 1, hi: config.mesh.n() });
    }
    let w = op.nodal_weights(k)?;
    let sigma = w[k];
    let mut rhs = manufactured_rhs(config, k)?;
    {
        let r = rhs.values_mut();
        for (wm, um) in w.iter().zip(history) {
            for (ri, ui) in r.iter_mut().zip(um.values()) {
                *ri -= wm * ui;
            }
        }
    }
    let grid = config.grid;
    let e2 = config.eps * config.eps;
    let mut lap = vec![0.0; grid.len()];
    let apply = |x: &[f64], out: &mut [f64]| {
        laplacian_raw(grid, x, &mut lap);
        for ((o, xi), li) in out.iter_mut().zip(x).zip(&lap) {
            *o = sigma * xi - e2 * li;
        }
    };
    let prev = history[k - 1].values();
    let res = cg_solve_with(apply, rhs.values(), Some(prev), config.cg_rel_tol, 10 * grid.len() + 100)?;
    Ok(StepOutcome { field: Field2D::from_values(grid, res.x)?, cg_iterations: res.iterations })
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub final_field: Field2D,
    /// `‖∇_h u^k‖` for `k = 0..=n`.
    pub h1: Vec<f64>,
    /// CG iterations per step, zero at `k = 0`.
    pub cg_iters: Vec<usize>,
    /// `u^0 … u^n` when requested.
    pub history: Option<Vec<Field2D>>,
    pub times: Vec<f64>,
}

impl SolveResult {
    /// CSV with header `k,t,h1_seminorm,cg_iters`.
    pub fn trajectory_csv(&self) -> String {
        let mut s = String::from("k,t,h1_seminorm,cg_iters\n");
        for (k, ((t, h), it)) in self.times.iter().zip(&self.h1).zip(&self.cg_iters).enumerate() {
            let _ = writeln!(s, "{k},{t:e},{h:e},{it}");
        }
        s
    }

    pub fn max_h1(&self) -> f64 {
        self.h1.iter().fold(0.0f64, |m, v| m.max(*v))
    }
}

/// Runs all `n` steps of the configured mesh.
pub fn solve(config: &SolverConfig) -> Result<SolveResult> {
    config.validate()?;
    let op = L2Operator::with_method(&config.mesh, config.alpha, config.coeff_method);
    let u0 = config.initial.clone().unwrap_or_else(|| Field2D::zeros(config.grid));
    let mut h1 = vec![h1_seminorm(&u0)];
    let mut cg_iters = vec![0];
    let mut history = vec![u0];
    for _ in 1..=config.mesh.n() {
        let out = step(config, &op, &history)?;
        h1.push(h1_seminorm(&out.field));
        cg_iters.push(out.cg_iterations);
        history.push(out.field);
    }
    let final_field = history.last().cloned().expect("history is nonempty");
    Ok(SolveResult {
        final_field,
        h1,
        cg_iters,
        history: config.keep_history.then_some(history),
        times: config.mesh.nodes().to_vec(),
    })
}
