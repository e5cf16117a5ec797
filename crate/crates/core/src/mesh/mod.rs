//! Time meshes, step ratios and the ratio constraints that guarantee a
//! positive semidefinite L2 bilinear form.

mod constants;
mod constraints;
mod io;

pub use constants::{constraint_constants, ConstraintConstants};
pub use constraints::{
    check_corollary_box, check_rho_condition, check_thm1, ConstraintReport, Criterion, Verdict,
};
pub use io::{read_mesh_csv, write_mesh_csv, mesh_from_csv_str, mesh_to_csv_string};

use crate::numkit::pow_diff_gap;
use crate::{Error, Result};

/// Strictly increasing time nodes `0 = t_0 < t_1 < ... < t_n` with cached
/// steps `τ_k = t_k - t_{k-1}` and ratios `ρ_k = τ_k / τ_{k-1}`.
///
/// Steps are stored separately from the nodes; for generated meshes they are
/// evaluated without cancellation and are the authoritative source for
/// distances between nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeMesh {
    nodes: Vec<f64>,
    steps: Vec<f64>,
    ratios: Vec<f64>,
}

impl TimeMesh {
    /// Uniform mesh `t_j = jT/n`.
    pub fn uniform(n: usize, horizon: f64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidMesh("uniform mesh needs n >= 1".into()));
        }
        check_horizon(horizon)?;
        let nodes = (0..=n).map(|j| j as f64 * horizon / n as f64).collect();
        let steps = vec![horizon / n as f64; n];
        Self::from_parts(nodes, steps)
    }

    /// Graded mesh `t_j = (j/K)^r T`.
    pub fn graded(k: usize, r: f64, horizon: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidMesh(format!("graded mesh needs K >= 2, got {k}")));
        }
        if !(r >= 1.0) || !r.is_finite() {
            return Err(Error::InvalidMesh(format!("grading parameter must be >= 1, got {r}")));
        }
        check_horizon(horizon)?;
        let kf = k as f64;
        let nodes: Vec<f64> = (0..=k).map(|j| (j as f64 / kf).powf(r) * horizon).collect();
        let mut steps = Vec::with_capacity(k);
        steps.push(nodes[1]);
        for j in 2..=k {
            let lo = (j - 1) as f64 / kf;
            steps.push(pow_diff_gap(lo, 1.0 / kf, r)? * horizon);
        }
        Self::from_parts(nodes, steps)
    }

    /// Graded mesh whose exponent decreases linearly from 3.1 to 2.5 after
    /// the sixth node: `r_j = 3.1 - 0.6 (j-6)/(K-6)` for `j >= 6`, `3.1` before.
    pub fn rvariable(k: usize, horizon: f64) -> Result<Self> {
        if k < 7 {
            return Err(Error::InvalidMesh(format!("r-variable mesh needs K >= 7, got {k}")));
        }
        check_horizon(horizon)?;
        let kf = k as f64;
        let nodes: Vec<f64> = (0..=k)
            .map(|j| (j as f64 / kf).powf(rvariable_exponent(j, k)) * horizon)
            .collect();
        Self::from_nodes(nodes)
    }

    /// Mesh from explicit nodes; `t_0` must be zero and nodes strictly increasing.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidMesh("a mesh needs at least two nodes".into()));
        }
        let steps = nodes.windows(2).map(|w| w[1] - w[0]).collect();
        Self::from_parts(nodes, steps)
    }

    /// Mesh from positive steps `τ_1, ..., τ_n`.
    pub fn from_steps(steps: Vec<f64>) -> Result<Self> {
        let mut nodes = Vec::with_capacity(steps.len() + 1);
        nodes.push(0.0);
        let mut t = 0.0;
        for s in &steps {
            t += s;
            nodes.push(t);
        }
        Self::from_parts(nodes, steps)
    }

    fn from_parts(nodes: Vec<f64>, steps: Vec<f64>) -> Result<Self> {
        if nodes[0] != 0.0 {
            return Err(Error::InvalidMesh(format!("first node must be 0, got {}", nodes[0])));
        }
        if steps.is_empty() {
            return Err(Error::InvalidMesh("a mesh needs at least one step".into()));
        }
        for (j, w) in nodes.windows(2).enumerate() {
            if !(w[1] > w[0]) || !w[1].is_finite() {
                return Err(Error::InvalidMesh(format!(
                    "nodes must be finite and strictly increasing: t_{} = {} >= t_{} = {}",
                    j,
                    w[0],
                    j + 1,
                    w[1]
                )));
            }
        }
        if let Some(k) = steps.iter().position(|s| !(*s > 0.0) || !s.is_finite()) {
            return Err(Error::InvalidMesh(format!("step {} is not positive", k + 1)));
        }
        let ratios = steps.windows(2).map(|w| w[1] / w[0]).collect();
        Ok(TimeMesh { nodes, steps, ratios })
    }

    /// Number of steps `n`.
    pub fn n(&self) -> usize {
        self.steps.len()
    }

    pub fn horizon(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn t(&self, j: usize) -> f64 {
        self.nodes[j]
    }

    /// `τ_k`, `1 <= k <= n`.
    pub fn tau(&self, k: usize) -> f64 {
        self.steps[k - 1]
    }

    /// `ρ_k = τ_k/τ_{k-1}`, `2 <= k <= n`.
    pub fn rho(&self, k: usize) -> f64 {
        self.ratios[k - 2]
    }

    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    /// Ratios `ρ_2, ..., ρ_n`.
    pub fn ratios(&self) -> &[f64] {
        &self.ratios
    }

    /// The first `n` steps of the mesh.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        if n < 1 || n > self.n() {
            return Err(Error::OutOfRange { index: n, lo: 1, hi: self.n() });
        }
        Self::from_parts(self.nodes[..=n].to_vec(), self.steps[..n].to_vec())
    }
}

/// Grading exponent `r_j` of the r-variable mesh.
pub fn rvariable_exponent(j: usize, k: usize) -> f64 {
    if j >= 6 {
        3.1 - 0.6 * (j as f64 - 6.0) / (k as f64 - 6.0)
    } else {
        3.1
    }
}

fn check_horizon(horizon: f64) -> Result<()> {
    if horizon > 0.0 && horizon.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidMesh(format!("horizon must be positive, got {horizon}")))
    }
}
