use std::sync::OnceLock;

use super::{coeff_row_closed, coeff_row_quadrature, CoeffRow, FracOrder};
use crate::mesh::TimeMesh;
use crate::numkit::gamma;
use crate::{Error, Result};

/// How coefficient rows are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoeffMethod {
    #[default]
    Closed,
    Quadrature,
}

/// Discrete Caputo derivative on a fixed mesh. Rows are computed on first use
/// and cached.
#[derive(Debug)]
pub struct L2Operator<'m> {
    mesh: &'m TimeMesh,
    alpha: FracOrder,
    method: CoeffMethod,
    rows: Vec<OnceLock<CoeffRow>>,
    gamma_1ma: f64,
    gamma_2ma: f64,
}

impl<'m> L2Operator<'m> {
    pub fn new(mesh: &'m TimeMesh, alpha: FracOrder) -> Self {
        Self::with_method(mesh, alpha, CoeffMethod::Closed)
    }

    pub fn with_method(mesh: &'m TimeMesh, alpha: FracOrder, method: CoeffMethod) -> Self {
        let al = alpha.value();
        L2Operator {
            mesh,
            alpha,
            method,
            rows: (0..=mesh.n()).map(|_| OnceLock::new()).collect(),
            gamma_1ma: gamma(1.0 - al).expect("1-alpha lies in (0,1)"),
            gamma_2ma: gamma(2.0 - al).expect("2-alpha lies in (1,2)"),
        }
    }

    pub fn mesh(&self) -> &'m TimeMesh {
        self.mesh
    }

    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    pub fn method(&self) -> CoeffMethod {
        self.method
    }

    /// `Γ(1-α)`.
    pub fn gamma_one_minus_alpha(&self) -> f64 {
        self.gamma_1ma
    }

    /// Coefficient row `k`, `2 <= k <= n`.
    pub fn row(&self, k: usize) -> Result<&CoeffRow> {
        super::check_row_index(self.mesh, k)?;
        if let Some(r) = self.rows[k].get() {
            return Ok(r);
        }
        let r = match self.method {
            CoeffMethod::Closed => coeff_row_closed(self.mesh, self.alpha, k)?,
            CoeffMethod::Quadrature => coeff_row_quadrature(self.mesh, self.alpha, k)?,
        };
        Ok(self.rows[k].get_or_init(|| r))
    }

    fn first_weight(&self) -> f64 {
        1.0 / (self.gamma_2ma * self.mesh.tau(1).powf(self.alpha.value()))
    }

    /// Weights `w_m`, `m = 0..=k`, with `L_k u = Σ w_m u^m`.
    pub fn nodal_weights(&self, k: usize) -> Result<Vec<f64>> {
        self.check_level(k)?;
        if k == 1 {
            let w = self.first_weight();
            return Ok(vec![-w, w]);
        }
        let row = self.row(k)?;
        let mut w = vec![0.0; k + 1];
        for j in 1..k {
            w[j - 1] += row.a(j);
            w[j] += row.b(j);
            w[j + 1] += row.c(j);
        }
        w[k - 2] += row.a(k);
        w[k - 1] += row.b(k);
        w[k] += row.c(k);
        for v in &mut w {
            *v /= self.gamma_1ma;
        }
        Ok(w)
    }

    /// Weights on the increments `δ_1 .. δ_k` (index `j - 1`), with
    /// `L_k u = Σ w_j δ_j u`.
    pub fn increment_weights(&self, k: usize) -> Result<Vec<f64>> {
        self.check_level(k)?;
        if k == 1 {
            return Ok(vec![self.first_weight()]);
        }
        let row = self.row(k)?;
        let mut w = vec![0.0; k];
        w[k - 1] = row.c(k) + row.c(k - 1);
        w[k - 2] -= row.a(k);
        w[0] -= row.a(1);
        for j in 2..k {
            w[j - 1] += row.d(j);
        }
        for v in &mut w {
            *v /= self.gamma_1ma;
        }
        Ok(w)
    }

    /// `L_k u` from nodal values `u^0 .. u^k`; `k` is `history.len() - 1`.
    pub fn apply_nodal(&self, history: &[f64]) -> Result<f64> {
        let k = history.len().saturating_sub(1);
        let w = self.nodal_weights(k)?;
        Ok(w.iter().zip(history).map(|(w, u)| w * u).sum())
    }

    /// `L_k u` from the increments form; must agree with [`Self::apply_nodal`].
    pub fn apply_increment(&self, history: &[f64]) -> Result<f64> {
        let k = history.len().saturating_sub(1);
        let w = self.increment_weights(k)?;
        Ok(w.iter()
            .enumerate()
            .map(|(i, w)| w * (history[i + 1] - history[i]))
            .sum())
    }

    fn check_level(&self, k: usize) -> Result<()> {
        if k < 1 || k > self.mesh.n() {
            return Err(Error::OutOfRange { index: k, lo: 1, hi: self.mesh.n() });
        }
        Ok(())
    }

    /// All rows as CSV with header `k,j,a,b,c,d` and 17 significant digits;
    /// `d` is empty where undefined.
    pub fn coefficients_csv(&self) -> Result<String> {
        let mut s = String::from(COEFF_CSV_HEADER);
        for k in 2..=self.mesh.n() {
            s.push_str(&self.row_csv(k)?);
        }
        Ok(s)
    }

    /// CSV lines of row `k`, without header.
    pub fn row_csv(&self, k: usize) -> Result<String> {
        let row = self.row(k)?;
        let mut s = String::new();
        for j in 1..=k {
            let d = if (2..k).contains(&j) { format!("{:.16e}", row.d(j)) } else { String::new() };
            s.push_str(&format!("{k},{j},{:.16e},{:.16e},{:.16e},{d}\n", row.a(j), row.b(j), row.c(j)));
        }
        Ok(s)
    }
}

pub const COEFF_CSV_HEADER: &str = "k,j,a,b,c,d\n";

#[cfg(test)]
mod tests {
    use super::*;

    fn linear(mesh: &TimeMesh) -> Vec<f64> {
        mesh.nodes().to_vec()
    }

    #[test]
    fn first_level_formula() {
        let mesh = TimeMesh::uniform(4, 1.0).unwrap();
        let al = FracOrder::new(0.5).unwrap();
        let op = L2Operator::new(&mesh, al);
        let v = op.apply_nodal(&[0.0, 1.0]).unwrap();
        let expect = 1.0 / (gamma(1.5).unwrap() * 0.25f64.powf(0.5));
        assert!((v - expect).abs() < 1e-14);
    }

    #[test]
    fn exact_on_quadratics() {
        // the L2 reconstruction reproduces t and t^2 exactly, up to the last panel
        let mesh = TimeMesh::graded(15, 2.0, 1.0).unwrap();
        let al = FracOrder::new(0.6).unwrap();
        let op = L2Operator::new(&mesh, al);
        let u = linear(&mesh);
        for k in 1..=15 {
            let v = op.apply_nodal(&u[..=k]).unwrap();
            let exact = mesh.t(k).powf(0.4) / gamma(1.4).unwrap();
            assert!((v - exact).abs() < 1e-12 * exact.max(1.0), "k={k} {v} {exact}");
        }
    }

    #[test]
    fn nodal_and_increment_forms_agree() {
        let mesh = TimeMesh::rvariable(9, 1.0).unwrap();
        let op = L2Operator::new(&mesh, FracOrder::new(0.3).unwrap());
        let u: Vec<f64> = (0..=9).map(|i| ((i * i) as f64).sin()).collect();
        for k in 1..=9 {
            let x = op.apply_nodal(&u[..=k]).unwrap();
            let y = op.apply_increment(&u[..=k]).unwrap();
            assert!((x - y).abs() < 1e-11 * (1.0 + x.abs()), "k={k}");
        }
    }

    #[test]
    fn constants_are_annihilated() {
        let mesh = TimeMesh::graded(8, 3.0, 2.0).unwrap();
        let op = L2Operator::new(&mesh, FracOrder::new(0.9).unwrap());
        for k in 1..=8 {
            let w = op.nodal_weights(k).unwrap();
            let s: f64 = w.iter().sum();
            let m = w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(s.abs() < 1e-13 * m);
        }
    }

    #[test]
    fn empty_history_rejected() {
        let mesh = TimeMesh::uniform(3, 1.0).unwrap();
        let op = L2Operator::new(&mesh, FracOrder::new(0.5).unwrap());
        assert!(op.apply_nodal(&[1.0]).is_err());
        assert!(op.apply_nodal(&[0.0; 5]).is_err());
    }

    #[test]
    fn csv_layout() {
        let mesh = TimeMesh::uniform(3, 1.0).unwrap();
        let op = L2Operator::new(&mesh, FracOrder::new(0.5).unwrap());
        let s = op.coefficients_csv().unwrap();
        let lines: Vec<_> = s.lines().collect();
        assert_eq!(lines[0], "k,j,a,b,c,d");
        assert_eq!(lines.len(), 1 + 2 + 3);
        assert!(lines[1].ends_with(','));
        assert!(!lines[4].ends_with(','));
    }
}
