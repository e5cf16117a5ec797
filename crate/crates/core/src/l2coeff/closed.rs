use super::{check_row_index, CoeffRow, FracOrder};
use crate::mesh::TimeMesh;
use crate::numkit::pow_diff_gap;
use crate::Result;

// Below this ratio width/distance the moments are summed as a binomial series.
const SERIES_THRESHOLD: f64 = 0.5;

/// Weighted moments of `(B + y)^{-α}` over a panel `y ∈ [0, τ]`:
/// `m0 = ∫ 1`, `m1 = ∫ y`, `mc = ∫ (τ - 2y)`.
///
/// `B` is the distance from the evaluation time to the right end of the panel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PanelMoments {
    pub m0: f64,
    pub m1: f64,
    pub mc: f64,
}

/// Moments of the kernel over a panel of width `tau` ending `dist` before the
/// evaluation time. Requires `dist > 0`.
pub fn panel_moments(dist: f64, tau: f64, alpha: f64) -> Result<PanelMoments> {
    let m0 = pow_diff_gap(dist, tau, 1.0 - alpha)? / (1.0 - alpha);
    let z = tau / dist;
    let scale = tau * tau * dist.powf(-alpha);
    let (phi, psi) = if z < SERIES_THRESHOLD {
        shape_series(z, alpha)
    } else {
        shape_closed(z, alpha)
    };
    Ok(PanelMoments { m0, m1: scale * phi, mc: scale * psi })
}

// φ(z) = ∫_0^1 θ (1+zθ)^{-α} dθ,  ψ(z) = ∫_0^1 (1-2θ)(1+zθ)^{-α} dθ
fn shape_series(z: f64, alpha: f64) -> (f64, f64) {
    let mut coeff = 1.0; // binomial(-α, m)
    let mut zm = 1.0;
    let mut phi = 0.5;
    let mut psi = 0.0;
    for m in 1..200 {
        let mf = m as f64;
        coeff *= (-alpha - (mf - 1.0)) / mf;
        zm *= z;
        let t = coeff * zm;
        let dphi = t / (mf + 2.0);
        let dpsi = -t * mf / ((mf + 1.0) * (mf + 2.0));
        phi += dphi;
        psi += dpsi;
        if t.abs() < 1e-18 * psi.abs().min(phi.abs()) {
            break;
        }
    }
    (phi, psi)
}

fn shape_closed(z: f64, alpha: f64) -> (f64, f64) {
    let lz = z.ln_1p();
    // E(p) = ((1+z)^p - 1)/(p z) = ∫_0^1 (1+zθ)^{p-1} dθ
    let e = |p: f64| (p * lz).exp_m1() / (p * z);
    let e1 = e(1.0 - alpha);
    let e2 = e(2.0 - alpha);
    let phi = (e2 - e1) / z;
    (phi, e1 - 2.0 * phi)
}

/// Row `k` of the L2 weights in closed form.
///
/// Distances `t_k - t_j` are accumulated from the steps, and the panel
/// integrals go through [`panel_moments`], so no power difference is formed
/// by subtracting two nearly equal powers.
pub fn coeff_row_closed(mesh: &TimeMesh, alpha: FracOrder, k: usize) -> Result<CoeffRow> {
    check_row_index(mesh, k)?;
    let al = alpha.value();
    let mut a = vec![0.0; k];
    let mut b = vec![0.0; k];
    let mut c = vec![0.0; k];

    // dist = t_k - t_j for the panel [t_{j-1}, t_j]
    let mut dist = mesh.tau(k);
    for j in (1..k).rev() {
        let tj = mesh.tau(j);
        let tn = mesh.tau(j + 1);
        let m = panel_moments(dist, tj, al)?;
        let aj = -(2.0 * m.m1 + tn * m.m0) / (tj * (tj + tn));
        let cj = m.mc / (tn * (tj + tn));
        a[j - 1] = aj;
        c[j - 1] = cj;
        b[j - 1] = -aj - cj;
        dist += tj;
    }

    let tk = mesh.tau(k);
    let tp = mesh.tau(k - 1);
    let tka = tk.powf(al);
    let ak = al * tk * tk / ((2.0 - al) * (1.0 - al) * tp * (tp + tk) * tka);
    let ck = 1.0 / ((1.0 - al) * tka) + al * tk / ((2.0 - al) * (1.0 - al) * (tp + tk) * tka);
    a[k - 1] = ak;
    c[k - 1] = ck;
    b[k - 1] = -ak - ck;
    Ok(CoeffRow::from_abc(k, a, b, c))
}
