use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;

/// Dense symmetric matrix; every write is mirrored so `a[i][j] == a[j][i]` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Domain("matrix order must be positive".into()));
        }
        Ok(SymmetricMatrix { order, entries: vec![0.0; order * order] })
    }

    /// Builds the matrix from the lower triangle of `f(i, j)`, `j <= i`.
    pub fn from_lower_fn<F: Fn(usize, usize) -> f64>(order: usize, f: F) -> Result<Self> {
        let mut m = Self::zeros(order)?;
        for i in 0..order {
            for j in 0..=i {
                m.set(i, j, f(i, j));
            }
        }
        Ok(m)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(diag.len())?;
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, *d);
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.order + j] = v;
        self.entries[j * self.order + i] = v;
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let n = self.order;
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }

    /// `self - diag(d)`.
    pub fn minus_diagonal(&self, d: &[f64]) -> Result<Self> {
        if d.len() != self.order {
            return Err(Error::LengthMismatch { expected: self.order, got: d.len() });
        }
        let mut m = self.clone();
        for (i, v) in d.iter().enumerate() {
            m.entries[i * self.order + i] -= v;
        }
        Ok(m)
    }
}

/// All eigenvalues (ascending) by cyclic Jacobi rotations.
///
/// Sweeps stop once the off-diagonal Frobenius norm is below
/// `1e-15 * ‖A‖_F` or stops decreasing.
pub fn sym_eigenvalues(a: &SymmetricMatrix) -> Vec<f64> {
    let n = a.order;
    let mut m = a.clone();
    let scale = a.frobenius_norm();
    let mut prev_off = f64::INFINITY;
    for _ in 0..MAX_SWEEPS {
        let off = m.off_diagonal_norm();
        if off <= 1e-15 * scale || off >= prev_off {
            break;
        }
        prev_off = off;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, p, q);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    eig.sort_by(f64::total_cmp);
    eig
}

// One Jacobi rotation annihilating m[p][q].
fn rotate(m: &mut SymmetricMatrix, p: usize, q: usize) {
    let n = m.order;
    let apq = m.get(p, q);
    if apq == 0.0 {
        return;
    }
    let app = m.get(p, p);
    let aqq = m.get(q, q);
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = m.get(k, p);
        let akq = m.get(k, q);
        m.set(k, p, c * akp - s * akq);
        m.set(k, q, s * akp + c * akq);
    }
    m.set(p, p, app - t * apq);
    m.set(q, q, aqq + t * apq);
    m.set(p, q, 0.0);
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn sym_eigen_min(a: &SymmetricMatrix) -> f64 {
    sym_eigenvalues(a)[0]
}
