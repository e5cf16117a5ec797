use crate::{Error, Result};

pub const DEFAULT_CG_REL_TOL: f64 = 1e-12;

/// Solution and iteration count of a conjugate-gradient solve.
#[derive(Debug, Clone)]
pub struct CgOutcome {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub rel_residual: f64,
}

/// Conjugate gradients for `A x = b` with `A` symmetric positive definite,
/// starting from zero. `apply_a(x, out)` writes `A x` into `out`.
pub fn cg_solve<A>(apply_a: A, b: &[f64], rel_tol: f64) -> Result<CgOutcome>
where
    A: FnMut(&[f64], &mut [f64]),
{
    cg_solve_with(apply_a, b, None, rel_tol, 10 * b.len() + 100)
}

/// As [`cg_solve`] with an optional initial guess and iteration cap.
pub fn cg_solve_with<A>(
    mut apply_a: A,
    b: &[f64],
    x0: Option<&[f64]>,
    rel_tol: f64,
    max_iter: usize,
) -> Result<CgOutcome>
where
    A: FnMut(&[f64], &mut [f64]),
{
    let n = b.len();
    if !(rel_tol > 0.0) {
        return Err(Error::Domain(format!("CG tolerance must be positive, got {rel_tol}")));
    }
    let b_norm = dot(b, b).sqrt();
    let mut x = match x0 {
        Some(x0) if x0.len() != n => return Err(Error::LengthMismatch { expected: n, got: x0.len() }),
        Some(x0) => x0.to_vec(),
        None => vec![0.0; n],
    };
    if b_norm == 0.0 {
        return Ok(CgOutcome { x: vec![0.0; n], iterations: 0, rel_residual: 0.0 });
    }
    let mut ax = vec![0.0; n];
    let mut r: Vec<f64> = if x0.is_some() {
        apply_a(&x, &mut ax);
        b.iter().zip(&ax).map(|(b, a)| b - a).collect()
    } else {
        b.to_vec()
    };
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rr = dot(&r, &r);
    let target = rel_tol * b_norm;
    let mut iterations = 0;
    while rr.sqrt() > target {
        if iterations >= max_iter {
            return Err(Error::CgNotConverged { iterations, residual: rr.sqrt() / b_norm });
        }
        apply_a(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) {
            return Err(Error::CgNotConverged { iterations, residual: rr.sqrt() / b_norm });
        }
        let step = rr / pap;
        for i in 0..n {
            x[i] += step * p[i];
            r[i] -= step * ap[i];
        }
        let rr_new = dot(&r, &r);
        let beta = rr_new / rr;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
        rr = rr_new;
        iterations += 1;
    }
    Ok(CgOutcome { x, iterations, rel_residual: rr.sqrt() / b_norm })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_rhs() {
        let b = [1.0, -2.0, 3.5];
        let out = cg_solve(|x, y| y.copy_from_slice(x), &b, 1e-12).unwrap();
        for (x, b) in out.x.iter().zip(b) {
            assert!((x - b).abs() < 1e-14);
        }
    }

    #[test]
    fn diagonal_system() {
        let b = [1.0; 5];
        let out = cg_solve(
            |x, y| {
                for i in 0..5 {
                    y[i] = (i + 1) as f64 * x[i];
                }
            },
            &b,
            1e-12,
        )
        .unwrap();
        for (i, x) in out.x.iter().enumerate() {
            assert!((x - 1.0 / (i + 1) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn laplacian_round_trip() {
        // -u'' with Dirichlet, h = 1: rows (2,-1,0), (-1,2,-1), (0,-1,2)
        let lap = |x: &[f64], y: &mut [f64]| {
            y[0] = 2.0 * x[0] - x[1];
            y[1] = -x[0] + 2.0 * x[1] - x[2];
            y[2] = -x[1] + 2.0 * x[2];
        };
        let mut b = [0.0; 3];
        lap(&[1.0, 2.0, 1.0], &mut b);
        assert_eq!(b, [0.0, 2.0, 0.0]);
        let out = cg_solve(lap, &b, 1e-14).unwrap();
        for (x, e) in out.x.iter().zip([1.0, 2.0, 1.0]) {
            assert!((x - e).abs() < 1e-13);
        }
    }

    #[test]
    fn indefinite_operator_is_reported() {
        let b = [1.0, 1.0];
        let r = cg_solve(|x, y| { y[0] = x[0]; y[1] = -x[1]; }, &b, 1e-12);
        assert!(matches!(r, Err(Error::CgNotConverged { .. })));
    }
}
