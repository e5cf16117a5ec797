use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;

use crate::l2coeff::FracOrder;
use crate::mesh::TimeMesh;
use crate::solver::{exact_solution, h1_seminorm, solve, Grid2D, RhsMode, SolverConfig};
use crate::{Error, Result};

/// Mesh family of a convergence series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeshFamily {
    Graded(f64),
    RVariable,
}

impl MeshFamily {
    pub fn build(self, k: usize, horizon: f64) -> Result<TimeMesh> {
        match self {
            MeshFamily::Graded(r) => TimeMesh::graded(k, r, horizon),
            MeshFamily::RVariable => TimeMesh::rvariable(k, horizon),
        }
    }

    pub fn label(self) -> String {
        match self {
            MeshFamily::Graded(r) => format!("graded:{r}"),
            MeshFamily::RVariable => "rvariable".to_string(),
        }
    }
}

impl FromStr for MeshFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "rvariable" {
            return Ok(MeshFamily::RVariable);
        }
        let r = s
            .strip_prefix("graded:")
            .and_then(|r| r.parse::<f64>().ok())
            .ok_or_else(|| Error::Domain(format!("unknown mesh family `{s}`")))?;
        Ok(MeshFamily::Graded(r))
    }
}

#[derive(Debug, Clone)]
pub struct ConvergenceSpec {
    pub alphas: Vec<f64>,
    pub ks: Vec<usize>,
    pub families: Vec<MeshFamily>,
    pub grid_n: usize,
    pub rhs_mode: RhsMode,
    pub eps: f64,
    pub horizon: f64,
}

impl Default for ConvergenceSpec {
    fn default() -> Self {
        ConvergenceSpec {
            alphas: vec![0.3, 0.5, 0.7],
            ks: vec![20, 30, 40, 60],
            families: vec![MeshFamily::Graded(2.8), MeshFamily::RVariable],
            grid_n: 32,
            rhs_mode: RhsMode::SemidiscreteManufactured,
            eps: 0.1,
            horizon: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub family: String,
    pub alpha: f64,
    pub k: usize,
    pub h1_error: f64,
    /// Empty for the smallest `K` of a series.
    pub rate: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// CSV with header `family,alpha,K,h1_error,rate`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("family,alpha,K,h1_error,rate\n");
        for r in &self.rows {
            let rate = r.rate.map(|v| format!("{v:.4}")).unwrap_or_default();
            let _ = writeln!(s, "{},{},{},{:.6e},{}", r.family, r.alpha, r.k, r.h1_error, rate);
        }
        s
    }

    /// Rows of one `(family, α)` series in ascending `K`.
    pub fn series(&self, family: &str, alpha: f64) -> Vec<&ConvergenceRow> {
        self.rows.iter().filter(|r| r.family == family && r.alpha == alpha).collect()
    }
}

/// `rate_i = ln(e_{i-1}/e_i) / ln(K_i/K_{i-1})`; the first entry is `None`.
pub fn observed_rates(ks: &[usize], errors: &[f64]) -> Vec<Option<f64>> {
    let mut out = vec![None; errors.len().min(ks.len())];
    for i in 1..out.len() {
        out[i] = Some((errors[i - 1] / errors[i]).ln() / (ks[i] as f64 / ks[i - 1] as f64).ln());
    }
    out
}

fn cell_error(spec: &ConvergenceSpec, family: MeshFamily, alpha: f64, k: usize) -> Result<f64> {
    let alpha = FracOrder::new(alpha)?;
    let grid = Grid2D::new(spec.grid_n)?;
    let mesh = family.build(k, spec.horizon)?;
    let cfg = SolverConfig::new(alpha, spec.eps, mesh, grid).with_rhs(spec.rhs_mode.clone());
    let res = solve(&cfg)?;
    let exact = exact_solution(grid, alpha, spec.horizon);
    Ok(h1_seminorm(&res.final_field.sub(&exact)?))
}

/// Solves every `(family, α, K)` cell in parallel and fills in rates.
pub fn run_convergence(spec: &ConvergenceSpec) -> Result<ConvergenceTable> {
    if spec.families.is_empty() || spec.ks.is_empty() || spec.alphas.is_empty() {
        return Err(Error::Domain("convergence study needs families, alphas and K values".into()));
    }
    if spec.ks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("K values must be strictly ascending".into()));
    }
    let cells: Vec<(MeshFamily, f64, usize)> = spec
        .families
        .iter()
        .flat_map(|f| spec.alphas.iter().flat_map(move |a| spec.ks.iter().map(move |k| (*f, *a, *k))))
        .collect();
    let errors: Vec<f64> = cells
        .par_iter()
        .map(|(f, a, k)| cell_error(spec, *f, *a, *k))
        .collect::<Result<_>>()?;

    let mut rows = Vec::with_capacity(cells.len());
    for (chunk_cells, chunk_err) in cells.chunks(spec.ks.len()).zip(errors.chunks(spec.ks.len())) {
        let rates = observed_rates(&spec.ks, chunk_err);
        for ((f, a, k), (e, r)) in chunk_cells.iter().zip(chunk_err.iter().zip(rates)) {
            rows.push(ConvergenceRow { family: f.label(), alpha: *a, k: *k, h1_error: *e, rate: r });
        }
    }
    rows.sort_by(|x, y| {
        x.family
            .cmp(&y.family)
            .then(x.alpha.total_cmp(&y.alpha))
            .then(x.k.cmp(&y.k))
    });
    Ok(ConvergenceTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_formula_on_printed_errors() {
        let r = observed_rates(&[50, 60], &[7.3684e-4, 4.6472e-4]);
        assert_eq!(r[0], None);
        assert!((r[1].unwrap() - 2.528).abs() < 1e-3);
    }

    #[test]
    fn family_labels_round_trip() {
        for f in [MeshFamily::Graded(2.8), MeshFamily::RVariable] {
            assert_eq!(f.label().parse::<MeshFamily>().unwrap(), f);
        }
        assert!("graded:x".parse::<MeshFamily>().is_err());
    }

    #[test]
    fn small_table_layout() {
        let spec = ConvergenceSpec {
            alphas: vec![0.5],
            ks: vec![8, 16],
            families: vec![MeshFamily::Graded(2.8)],
            grid_n: 4,
            ..Default::default()
        };
        let t = run_convergence(&spec).unwrap();
        assert_eq!(t.rows.len(), 2);
        let csv = t.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "family,alpha,K,h1_error,rate");
        assert!(lines[1].starts_with("graded:2.8,0.5,8,") && lines[1].ends_with(','));
        assert!(t.rows[1].rate.unwrap() > 2.0);
    }

    #[test]
    fn descending_k_rejected() {
        let spec = ConvergenceSpec { ks: vec![20, 10], ..Default::default() };
        assert!(run_convergence(&spec).is_err());
    }
}
