use super::{check_row_index, CoeffRow, FracOrder};
use crate::mesh::TimeMesh;
use crate::numkit::{integrate_endpoint_singular_tol, integrate_interval};
use crate::Result;

const ORACLE_TOL: f64 = 1e-14;

/// Row `k` computed from the defining integrals by adaptive quadrature.
///
/// All three of `a`, `b`, `c` are integrated independently, so the identity
/// `a + b + c = 0` is a genuine check on the result.
pub fn coeff_row_quadrature(mesh: &TimeMesh, alpha: FracOrder, k: usize) -> Result<CoeffRow> {
    check_row_index(mesh, k)?;
    let al = alpha.value();
    let mut a = vec![0.0; k];
    let mut b = vec![0.0; k];
    let mut c = vec![0.0; k];

    let mut dist = mesh.tau(k);
    for j in (1..k).rev() {
        let tj = mesh.tau(j);
        let tn = mesh.tau(j + 1);
        let s = tj + tn;
        let z = tj / dist;
        let scale = dist.powf(-al);
        // kernel (t_k - t_{j-1} - θ τ_j)^{-α} = B^{-α} (1 + (1-θ) z)^{-α}
        let ker = move |th: f64| (1.0 + (1.0 - th) * z).powf(-al);
        a[j - 1] = scale
            * integrate_interval(|th| (-2.0 * tj * (1.0 - th) - tn) / s * ker(th), 0.0, 1.0, ORACLE_TOL)?;
        b[j - 1] = -scale
            * integrate_interval(|th| (2.0 * tj * th - tj - tn) / tn * ker(th), 0.0, 1.0, ORACLE_TOL)?;
        // (2θ - 1) integrates to zero, so the kernel is centred at θ = 1/2 to
        // keep the integrand as small as the result when z is tiny
        let v = 0.5 * z;
        let ker_mid = (1.0 + v).powf(-al);
        let centred = move |th: f64| ker_mid * (-al * ((0.5 - th) * z / (1.0 + v)).ln_1p()).exp_m1();
        c[j - 1] = scale
            * integrate_interval(|th| tj * tj * (2.0 * th - 1.0) / (tn * s) * centred(th), 0.0, 1.0, ORACLE_TOL)?;
        dist += tj;
    }

    // last panel: kernel (τ_k (1-θ))^{-α}
    let tk = mesh.tau(k);
    let tp = mesh.tau(k - 1);
    let scale = tk.powf(-al);
    a[k - 1] = scale
        * integrate_endpoint_singular_tol(
            |th| tk * tk * (2.0 * th - 1.0) / (tp * (tp + tk)),
            al,
            ORACLE_TOL,
        )?;
    b[k - 1] = -scale
        * integrate_endpoint_singular_tol(|th| (tk * (2.0 * th - 1.0) + tp) / tp, al, ORACLE_TOL)?;
    c[k - 1] = scale
        * integrate_endpoint_singular_tol(|th| (2.0 * tk * th + tp) / (tp + tk), al, ORACLE_TOL)?;
    Ok(CoeffRow::from_abc(k, a, b, c))
}
