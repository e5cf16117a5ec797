//! L2 weights of the discrete Caputo derivative and the operator `L_k`.
//!
//! For `k >= 2`, with piecewise-quadratic interpolation of the history,
//!
//! ```text
//! Γ(1-α) L_k u = Σ_{j=1}^{k-1} (a_j u^{j-1} + b_j u^j + c_j u^{j+1})
//!              + a_k u^{k-2} + b_k u^{k-1} + c_k u^k
//! ```
//!
//! and `L_1 u = (u^1 - u^0) / (Γ(2-α) τ_1^α)`.

mod closed;
mod lemma;
mod operator;
mod oracle;

pub use closed::{coeff_row_closed, panel_moments, PanelMoments};
pub use lemma::{lemma_properties_check, LemmaReport, PropertyResult};
pub use operator::{CoeffMethod, L2Operator, COEFF_CSV_HEADER};
pub use oracle::coeff_row_quadrature;

use crate::{Error, Result};

/// Fractional order `α ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FracOrder(f64);

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(FracOrder(alpha))
        } else {
            Err(Error::Domain(format!("fractional order must lie in (0,1), got {alpha}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Coefficients of row `k`. Vectors are indexed by `j - 1`; `d` holds
/// `d_j = c_{j-1} - a_j` for `2 <= j <= k-1` at index `j - 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffRow {
    pub k: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

impl CoeffRow {
    pub(crate) fn from_abc(k: usize, a: Vec<f64>, b: Vec<f64>, c: Vec<f64>) -> Self {
        let d = (2..k).map(|j| c[j - 2] - a[j - 1]).collect();
        CoeffRow { k, a, b, c, d }
    }

    pub fn a(&self, j: usize) -> f64 {
        self.a[j - 1]
    }

    pub fn b(&self, j: usize) -> f64 {
        self.b[j - 1]
    }

    pub fn c(&self, j: usize) -> f64 {
        self.c[j - 1]
    }

    /// `d_j`, `2 <= j <= k-1`.
    pub fn d(&self, j: usize) -> f64 {
        self.d[j - 2]
    }

    /// Largest `|a_j + b_j + c_j|` relative to the largest coefficient magnitude.
    pub fn row_sum_defect(&self) -> f64 {
        let scale = self
            .a
            .iter()
            .chain(&self.b)
            .chain(&self.c)
            .fold(0.0f64, |m, v| m.max(v.abs()));
        let worst = (0..self.k)
            .map(|i| (self.a[i] + self.b[i] + self.c[i]).abs())
            .fold(0.0f64, f64::max);
        worst / scale
    }

    /// Sign pattern `a_j < 0, b_j > 0, c_j > 0` for `j < k` and
    /// `a_k > 0, b_k < 0, c_k > 0`, plus `d_j > 0`.
    pub fn signs_hold(&self) -> bool {
        let k = self.k;
        let inner = (1..k).all(|j| self.a(j) < 0.0 && self.b(j) > 0.0 && self.c(j) > 0.0);
        let last = self.a(k) > 0.0 && self.b(k) < 0.0 && self.c(k) > 0.0;
        inner && last && self.d.iter().all(|d| *d > 0.0)
    }
}

pub(crate) fn check_row_index(mesh: &crate::mesh::TimeMesh, k: usize) -> Result<()> {
    if k < 2 || k > mesh.n() {
        return Err(Error::OutOfRange { index: k, lo: 2, hi: mesh.n() });
    }
    Ok(())
}
