use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::{Error, Result};

/// Uniform grid on `[0, 2π]²` with `N` intervals per axis; unknowns live on
/// the `(N-1)²` interior nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    n: usize,
    h: f64,
}

impl Grid2D {
    /// `N >= 2`; `N = 2` leaves a single interior node.
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("grid needs at least 2 intervals, got {n}")));
        }
        Ok(Grid2D { n, h: 2.0 * PI / n as f64 })
    }

    pub fn intervals(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Interior nodes per axis.
    pub fn m(&self) -> usize {
        self.n - 1
    }

    pub fn len(&self) -> usize {
        self.m() * self.m()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Linear index of interior node `(i, j)`, `1 <= i, j <= N-1`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.m() + (j - 1)
    }

    /// Eigenvalue of `-Δ_h` for `sin x sin y`: `(8/h²) sin²(h/2)`.
    pub fn sin_sin_eigenvalue(&self) -> f64 {
        8.0 / (self.h * self.h) * (self.h / 2.0).sin().powi(2)
    }
}

/// Interior values of a grid function; boundary values are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    grid: Grid2D,
    values: Vec<f64>,
}

impl Field2D {
    pub fn zeros(grid: Grid2D) -> Self {
        Field2D { grid, values: vec![0.0; grid.len()] }
    }

    pub fn from_fn<F: Fn(f64, f64) -> f64>(grid: Grid2D, f: F) -> Self {
        let h = grid.h();
        let mut values = Vec::with_capacity(grid.len());
        for i in 1..=grid.m() {
            for j in 1..=grid.m() {
                values.push(f(i as f64 * h, j as f64 * h));
            }
        }
        Field2D { grid, values }
    }

    pub fn from_values(grid: Grid2D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch { expected: grid.len(), got: values.len() });
        }
        Ok(Field2D { grid, values })
    }

    /// `sin x sin y` on the grid.
    pub fn sin_sin(grid: Grid2D) -> Self {
        Self::from_fn(grid, |x, y| x.sin() * y.sin())
    }

    pub fn grid(&self) -> Grid2D {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Value at node `(i, j)` including boundary nodes, `0 <= i, j <= N`.
    pub fn at(&self, i: usize, j: usize) -> f64 {
        let n = self.grid.intervals();
        if i == 0 || j == 0 || i == n || j == n {
            0.0
        } else {
            self.values[self.grid.index(i, j)]
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Field2D { grid: self.grid, values: self.values.iter().map(|v| v * s).collect() }
    }

    pub fn sub(&self, other: &Field2D) -> Result<Self> {
        self.check_same(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(Field2D { grid: self.grid, values })
    }

    fn check_same(&self, other: &Field2D) -> Result<()> {
        if self.grid != other.grid {
            return Err(Error::LengthMismatch { expected: self.values.len(), got: other.values.len() });
        }
        Ok(())
    }

    /// Discrete `L²(Ω)` norm `(h² Σ u²)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        self.grid.h() * self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// CSV with header `i,j,value` over interior nodes.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("i,j,value\n");
        for i in 1..=self.grid.m() {
            for j in 1..=self.grid.m() {
                let _ = writeln!(s, "{i},{j},{:e}", self.at(i, j));
            }
        }
        s
    }
}

/// Applies the five-point Laplacian to raw interior values.
pub(crate) fn laplacian_raw(grid: Grid2D, u: &[f64], out: &mut [f64]) {
    let m = grid.m();
    let inv_h2 = 1.0 / (grid.h() * grid.h());
    for i in 0..m {
        for j in 0..m {
            let c = u[i * m + j];
            let mut s = -4.0 * c;
            if i > 0 {
                s += u[(i - 1) * m + j];
            }
            if i + 1 < m {
                s += u[(i + 1) * m + j];
            }
            if j > 0 {
                s += u[i * m + j - 1];
            }
            if j + 1 < m {
                s += u[i * m + j + 1];
            }
            out[i * m + j] = s * inv_h2;
        }
    }
}

/// `Δ_h u` with homogeneous Dirichlet data.
pub fn laplacian_apply(field: &Field2D) -> Field2D {
    let mut out = Field2D::zeros(field.grid);
    laplacian_raw(field.grid, &field.values, &mut out.values);
    out
}

/// `‖∇_h u‖`: root of the sum of squared forward differences over every
/// grid edge, edges to the boundary included. This is the `L²` norm of the
/// piecewise constant difference quotient.
pub fn h1_seminorm(field: &Field2D) -> f64 {
    let n = field.grid.intervals();
    let mut s = 0.0;
    for i in 0..n {
        for j in 1..n {
            s += (field.at(i + 1, j) - field.at(i, j)).powi(2);
            s += (field.at(j, i + 1) - field.at(j, i)).powi(2);
        }
    }
    s.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spacing() {
        let g = Grid2D::new(64).unwrap();
        assert!((g.h() * 64.0 - 2.0 * PI).abs() < 1e-14);
        assert_eq!(g.len(), 63 * 63);
        assert!(Grid2D::new(1).is_err());
    }

    #[test]
    fn sin_sin_is_discrete_eigenfunction() {
        let g = Grid2D::new(16).unwrap();
        let u = Field2D::sin_sin(g);
        let lu = laplacian_apply(&u);
        let lam = g.sin_sin_eigenvalue();
        for (a, b) in lu.values().iter().zip(u.values()) {
            assert!((a + lam * b).abs() < 1e-13);
        }
    }

    #[test]
    fn spike_stencil() {
        let g = Grid2D::new(6).unwrap();
        let mut u = Field2D::zeros(g);
        u.values_mut()[g.index(3, 3)] = 1.0;
        let lu = laplacian_apply(&u);
        let ih2 = 1.0 / (g.h() * g.h());
        assert!((lu.at(3, 3) + 4.0 * ih2).abs() < 1e-12);
        for (i, j) in [(2, 3), (4, 3), (3, 2), (3, 4)] {
            assert!((lu.at(i, j) - ih2).abs() < 1e-12);
        }
        assert_eq!(lu.at(2, 2), 0.0);
    }

    #[test]
    fn seminorm_single_node() {
        let g = Grid2D::new(2).unwrap();
        let u = Field2D::from_values(g, vec![-1.5]).unwrap();
        assert!((h1_seminorm(&u) - 3.0).abs() < 1e-15);
        assert_eq!(h1_seminorm(&Field2D::zeros(g)), 0.0);
    }

    #[test]
    fn seminorm_of_sin_sin_converges() {
        // ∫ |∇(sin x sin y)|² over [0, 2π]² is 2π²
        let target = 2f64.sqrt() * PI;
        let e1 = (h1_seminorm(&Field2D::sin_sin(Grid2D::new(32).unwrap())) - target).abs();
        let e2 = (h1_seminorm(&Field2D::sin_sin(Grid2D::new(64).unwrap())) - target).abs();
        assert!(e2 < 1e-2);
        assert!((e1 / e2 - 4.0).abs() < 0.1);
    }

    #[test]
    fn csv_header_and_rows() {
        let g = Grid2D::new(3).unwrap();
        let s = Field2D::zeros(g).to_csv();
        assert!(s.starts_with("i,j,value\n1,1,0e0\n"));
        assert_eq!(s.lines().count(), 5);
    }
}
