use std::fmt::Write as _;

use rayon::prelude::*;

use crate::l2coeff::FracOrder;
use crate::mesh::TimeMesh;
use crate::quadform::{psd_min_eig, QuadFormMatrix};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PsdSweepRow {
    pub r: f64,
    pub alpha: f64,
    pub n: usize,
    pub min_eig: f64,
    pub psd: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PsdSweepResult {
    pub rows: Vec<PsdSweepRow>,
}

impl PsdSweepResult {
    /// CSV with header `r,alpha,n,min_eig,psd`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("r,alpha,n,min_eig,psd\n");
        for r in &self.rows {
            let _ = writeln!(s, "{},{},{},{:e},{}", r.r, r.alpha, r.n, r.min_eig, r.psd);
        }
        s
    }

    /// Values of `α` for which some grading exponent loses semidefiniteness
    /// and a larger one regains it.
    pub fn non_monotone_alphas(&self) -> Vec<f64> {
        let mut alphas: Vec<f64> = self.rows.iter().map(|r| r.alpha).collect();
        alphas.sort_by(f64::total_cmp);
        alphas.dedup();
        alphas
            .into_iter()
            .filter(|a| {
                let mut lost = false;
                for row in self.rows.iter().filter(|r| r.alpha == *a) {
                    if !row.psd {
                        lost = true;
                    } else if lost {
                        return true;
                    }
                }
                false
            })
            .collect()
    }
}

/// Minimum eigenvalue of `M + Mᵀ` on `graded(K = n, r, T = 1)` for every
/// `(r, α)` pair. Rows are sorted by `α`, then `r`.
pub fn run_psd_sweep(r_values: &[f64], alphas: &[f64], n: usize) -> Result<PsdSweepResult> {
    if n < 2 {
        return Err(Error::OutOfRange { index: n, lo: 2, hi: usize::MAX });
    }
    let cells: Vec<(f64, f64)> =
        alphas.iter().flat_map(|a| r_values.iter().map(move |r| (*r, *a))).collect();
    let mut rows: Vec<PsdSweepRow> = cells
        .par_iter()
        .map(|(r, a)| {
            let mesh = TimeMesh::graded(n, *r, 1.0)?;
            let v = psd_min_eig(&QuadFormMatrix::assemble(&mesh, FracOrder::new(*a)?, n)?);
            Ok(PsdSweepRow { r: *r, alpha: *a, n, min_eig: v.min_eig, psd: v.psd })
        })
        .collect::<Result<_>>()?;
    rows.sort_by(|x, y| x.alpha.total_cmp(&y.alpha).then(x.r.total_cmp(&y.r)));
    Ok(PsdSweepResult { rows })
}
