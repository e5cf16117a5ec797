use crate::{Error, Result};
use std::sync::OnceLock;

const GL_ORDER: usize = 15;
const MAX_PANELS: usize = 20_000;

/// Nodes and weights of the 15-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_15() -> &'static ([f64; GL_ORDER], [f64; GL_ORDER]) {
    static RULE: OnceLock<([f64; GL_ORDER], [f64; GL_ORDER])> = OnceLock::new();
    RULE.get_or_init(gauss_legendre_rule::<GL_ORDER>)
}

// Newton iteration on P_n starting from the Chebyshev-like guess.
fn gauss_legendre_rule<const N: usize>() -> ([f64; N], [f64; N]) {
    let mut x = [0.0; N];
    let mut w = [0.0; N];
    let n = N as f64;
    for i in 0..N.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(N, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(N, z);
        if d != 0.0 {
            dp = d;
        }
        x[i] = -z;
        x[N - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[N - 1 - i] = wi;
    }
    (x, w)
}

fn legendre_with_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

// Returns (integral, sum of |f| * weight) on [a, b].
fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let (x, w) = gauss_legendre_15();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut s = 0.0;
    let mut abs = 0.0;
    for i in 0..GL_ORDER {
        let v = f(mid + half * x[i]) * w[i];
        s += v;
        abs += v.abs();
    }
    (s * half, abs * half.abs())
}

/// Adaptive composite 15-point Gauss–Legendre quadrature on `[a, b]`.
///
/// A panel is accepted when its estimate agrees with the sum over its two
/// halves to within its share of `tol`, or to within rounding of the panel
/// sum itself.
pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("integration interval [{a}, {b}] is empty")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("quadrature tolerance must be positive, got {tol}")));
    }
    let width = b - a;
    let mut total = 0.0;
    let mut err_total = 0.0;
    let mut panels = 0usize;
    let (whole, _) = panel(&f, a, b);
    let mut stack = vec![(a, b, whole)];
    while let Some((lo, hi, estimate)) = stack.pop() {
        panels += 1;
        let mid = 0.5 * (lo + hi);
        let (left, labs) = panel(&f, lo, mid);
        let (right, rabs) = panel(&f, mid, hi);
        let refined = left + right;
        let diff = (refined - estimate).abs();
        let share = tol * (hi - lo) / width;
        let rounding = 64.0 * f64::EPSILON * (labs + rabs);
        if !refined.is_finite() {
            return Err(Error::Domain("integrand is not finite on the interval".into()));
        }
        if diff <= share.max(rounding) || mid <= lo || mid >= hi {
            total += refined;
            err_total += diff;
            continue;
        }
        if panels >= MAX_PANELS {
            return Err(Error::QuadratureNoConvergence {
                panels,
                estimate: total + refined,
                error: err_total + diff,
            });
        }
        stack.push((mid, hi, right));
        stack.push((lo, mid, left));
    }
    Ok(total)
}

/// `∫_0^1 f` for a smooth integrand, absolute error about `tol` (`tol >= 1e-14`).
pub fn integrate_smooth<F: Fn(f64) -> f64>(f: F, tol: f64) -> Result<f64> {
    integrate_interval(f, 0.0, 1.0, tol.max(1e-14))
}

const LAYER_PANELS: usize = 52;

/// `∫_0^1 g(θ) (1-θ)^{-α} dθ` for smooth `g` and `α ∈ (0,1)`.
///
/// The substitution `1 - θ = w^{1/(1-α)}` turns the integral into
/// `(1-α)^{-1} ∫_0^1 g(1 - w^{1/(1-α)}) dw`, which is smooth.
pub fn integrate_endpoint_singular<F: Fn(f64) -> f64>(g: F, alpha: f64) -> Result<f64> {
    integrate_endpoint_singular_tol(g, alpha, 1e-12)
}

/// As [`integrate_endpoint_singular`] with an explicit absolute tolerance.
pub fn integrate_endpoint_singular_tol<F: Fn(f64) -> f64>(g: F, alpha: f64, tol: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    let q = 1.0 / (1.0 - alpha);
    // For α near 1 the transformed integrand varies only in a layer of width
    // about 1/q next to w = 1, so panels are graded geometrically towards it.
    let h = |w: f64| g(1.0 - w.powf(q));
    let tol_each = (tol / (q * (LAYER_PANELS + 1) as f64)).max(1e-300);
    let mut inner = 0.0;
    let mut lo = 0.0;
    for i in 1..=LAYER_PANELS {
        let hi = 1.0 - 0.5f64.powi(i as i32);
        inner += integrate_interval(h, lo, hi, tol_each)?;
        lo = hi;
    }
    inner += integrate_interval(h, lo, 1.0, tol_each)?;
    Ok(q * inner)
}
