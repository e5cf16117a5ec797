//! The matrix `M` of the discrete bilinear form `B_n(u, u) = Σ L_k u · δ_k u`,
//! its symmetric part, and the diagonal lower bound certified by eigenvalues.

use std::fmt;

use crate::l2coeff::{coeff_row_closed, CoeffRow, FracOrder, L2Operator};
use crate::mesh::TimeMesh;
use crate::numkit::{gamma, sym_eigenvalues, SymmetricMatrix};
use crate::{Error, Result};

/// Relative tolerance of the positive semidefiniteness verdict.
pub const PSD_REL_TOL: f64 = 1e-10;
/// Relative tolerance of the diagonal lower bound verdict.
pub const GAP_REL_TOL: f64 = 1e-9;

/// Lower-triangular `n × n` matrix with `B_n = ψ M ψᵀ / Γ(1-α)`, where
/// `ψ = (δ_1 u, …, δ_n u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadFormMatrix {
    n: usize,
    alpha: FracOrder,
    // row i (0-based) holds columns 0..=i
    rows: Vec<Vec<f64>>,
}

fn rows_up_to(mesh: &TimeMesh, alpha: FracOrder, n: usize) -> Result<Vec<CoeffRow>> {
    (2..=n).map(|k| coeff_row_closed(mesh, alpha, k)).collect()
}

fn require_steps(mesh: &TimeMesh, n: usize, lo: usize) -> Result<()> {
    if n < lo || n > mesh.n() {
        return Err(Error::OutOfRange { index: n, lo, hi: mesh.n() });
    }
    Ok(())
}

impl QuadFormMatrix {
    pub fn assemble(mesh: &TimeMesh, alpha: FracOrder, n: usize) -> Result<Self> {
        require_steps(mesh, n, 1)?;
        let al = alpha.value();
        let mut rows = vec![vec![1.0 / ((1.0 - al) * mesh.tau(1).powf(al))]];
        for row in rows_up_to(mesh, alpha, n)? {
            let k = row.k;
            let mut m = vec![0.0; k];
            m[0] = -row.a(1);
            for j in 2..k {
                m[j - 1] = row.d(j);
            }
            m[k - 2] -= row.a(k);
            m[k - 1] = row.c(k - 1) + row.c(k);
            rows.push(m);
        }
        Ok(QuadFormMatrix { n, alpha, rows })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    /// Entry `(i, j)`, 1-based; zero above the diagonal.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j > i {
            0.0
        } else {
            self.rows[i - 1][j - 1]
        }
    }

    /// `M + Mᵀ`.
    pub fn symmetric_part(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_lower_fn(self.n, |i, j| {
            let v = self.rows[i][j];
            if i == j {
                2.0 * v
            } else {
                v
            }
        })
        .expect("order is positive")
    }

    /// `ψ M ψᵀ`.
    pub fn quadratic_form(&self, psi: &[f64]) -> Result<f64> {
        if psi.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, got: psi.len() });
        }
        Ok(self
            .rows
            .iter()
            .zip(psi)
            .map(|(row, pi)| pi * row.iter().zip(psi).map(|(m, p)| m * p).sum::<f64>())
            .sum())
    }
}

/// Spectral summary of `M + Mᵀ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdVerdict {
    pub n: usize,
    pub alpha: f64,
    pub min_eig: f64,
    /// `‖M + Mᵀ‖₂`.
    pub norm: f64,
    pub psd: bool,
}

impl fmt::Display for PsdVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} alpha={} min_eig={:.12e} psd={}", self.n, self.alpha, self.min_eig, self.psd)
    }
}

fn spectrum_ends(s: &SymmetricMatrix) -> (f64, f64) {
    let ev = sym_eigenvalues(s);
    let lo = ev[0];
    let norm = ev.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    (lo, norm)
}

/// Smallest eigenvalue of `M + Mᵀ`; the form is judged positive semidefinite
/// when it is at least `-PSD_REL_TOL · ‖M + Mᵀ‖₂`.
pub fn psd_min_eig(m: &QuadFormMatrix) -> PsdVerdict {
    let (min_eig, norm) = spectrum_ends(&m.symmetric_part());
    PsdVerdict { n: m.n, alpha: m.alpha.value(), min_eig, norm, psd: min_eig >= -PSD_REL_TOL * norm }
}

/// `β_1 … β_n` (index `k - 1`) of the splitting `M = A + B`. Needs `n >= 3`.
pub fn beta_coeffs(mesh: &TimeMesh, alpha: FracOrder, n: usize) -> Result<Vec<f64>> {
    require_steps(mesh, n, 3)?;
    let rows = rows_up_to(mesh, alpha, n)?;
    let row = |k: usize| &rows[k - 2];
    let mut beta = vec![0.0; n];
    beta[0] = -row(2).a(1) / 2.0;
    beta[1] = (row(3).d(2) + row(3).a(1) - row(2).a(1)) / 2.0;
    for k in 3..n {
        beta[k - 1] = (row(k + 1).d(k) + row(k).d(k - 1) - row(k + 1).d(k - 1)) / 2.0;
    }
    beta[n - 1] = row(n).d(n - 1) / 2.0;
    Ok(beta)
}

/// The leading `2 × 2` block `C` of `B + Bᵀ` and its smaller eigenvalue `ĝ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeadingBlock {
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
    pub ghat: f64,
}

/// Builds `C` from the first three steps of the mesh. `ĝ` may be negative on
/// meshes outside the certified region; this is reported, not rejected.
pub fn matrix_c_and_ghat(mesh: &TimeMesh, alpha: FracOrder) -> Result<LeadingBlock> {
    if mesh.n() < 3 {
        return Err(Error::InvalidMesh(format!(
            "the leading block needs at least 3 steps, mesh has {}",
            mesh.n()
        )));
    }
    let al = alpha.value();
    let beta = beta_coeffs(mesh, alpha, 3)?;
    let r2 = coeff_row_closed(mesh, alpha, 2)?;
    let r3 = coeff_row_closed(mesh, alpha, 3)?;
    let c11 = 2.0 / ((1.0 - al) * mesh.tau(1).powf(al)) - 2.0 * beta[0];
    let c12 = -r2.a(2);
    let c22 = 2.0 * r2.c(1) + 2.0 * r2.c(2) - 2.0 * beta[1] - r3.a(3);
    let tr = c11 + c22;
    let disc = ((c11 - c22).powi(2) + 4.0 * c12 * c12).sqrt();
    Ok(LeadingBlock { c11, c12, c22, ghat: (tr - disc) / 2.0 })
}

/// Diagonal weights `g_k(α)` of the lower bound
/// `M + Mᵀ ⪰ diag(g) / ((2-α)(1-α))`.
#[derive(Debug, Clone, PartialEq)]
pub struct GVector {
    pub g: Vec<f64>,
    pub ghat: f64,
}

impl GVector {
    pub fn all_positive(&self) -> bool {
        self.g.iter().all(|g| *g > 0.0)
    }
}

/// Builds `g_1 … g_n` using the ratios `ρ_2 … ρ_n` only. The mesh must have
/// at least 3 steps for `ĝ`.
pub fn g_vector(mesh: &TimeMesh, alpha: FracOrder, n: usize) -> Result<GVector> {
    require_steps(mesh, n, 2)?;
    let al = alpha.value();
    let ghat = matrix_c_and_ghat(mesh, alpha)?.ghat;
    let head = (2.0 - al) * (1.0 - al) * ghat;
    let base = (1.0 + al) * (2.0 - al) / al;
    let tail = |rho: f64| rho * (rho - 2.0) / (1.0 + rho);
    let mut g = vec![head; n];
    for k in 3..n {
        let rn = mesh.rho(k + 1);
        let v = base + (rn - 1.0 + al) / (1.0 + rn).powf(al) - 2.0 * rn.powf(2.0 - al) / (1.0 + rn)
            - tail(mesh.rho(k));
        g[k - 1] = al / mesh.tau(k).powf(al) * v;
    }
    if n >= 3 {
        g[n - 1] = al / mesh.tau(n).powf(al) * (base - tail(mesh.rho(n)));
    }
    Ok(GVector { g, ghat })
}

/// Smallest eigenvalue of `M + Mᵀ - diag(g)/((2-α)(1-α))` with `‖M + Mᵀ‖₂`.
pub fn lower_bound_gap(m: &QuadFormMatrix, g: &GVector) -> Result<(f64, f64)> {
    if g.g.len() != m.n {
        return Err(Error::LengthMismatch { expected: m.n, got: g.g.len() });
    }
    let al = m.alpha.value();
    let s = m.symmetric_part();
    let (_, norm) = spectrum_ends(&s);
    let shift: Vec<f64> = g.g.iter().map(|v| v / ((2.0 - al) * (1.0 - al))).collect();
    let (gap, _) = spectrum_ends(&s.minus_diagonal(&shift)?);
    Ok((gap, norm))
}

/// `B_n(u, u) = Σ_{k=1}^n L_k u · δ_k u` for a scalar history `u^0 … u^n`.
pub fn bilinear_form(history: &[f64], mesh: &TimeMesh, alpha: FracOrder) -> Result<f64> {
    let n = history.len().saturating_sub(1);
    if n < 1 {
        return Err(Error::LengthMismatch { expected: 2, got: history.len() });
    }
    require_steps(mesh, n, 1)?;
    let op = L2Operator::new(mesh, alpha);
    let mut s = 0.0;
    for k in 1..=n {
        s += op.apply_increment(&history[..=k])? * (history[k] - history[k - 1]);
    }
    Ok(s)
}

/// `Γ(1-α)`, the scale between `ψ M ψᵀ` and `B_n`.
pub fn form_scale(alpha: FracOrder) -> f64 {
    gamma(1.0 - alpha.value()).expect("1-alpha lies in (0,1)")
}
