use std::fmt;
use std::sync::OnceLock;

use crate::numkit::{bisect, Bracket};

/// Step-ratio thresholds bounding the admissible meshes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintConstants {
    /// Root of `ρ(1+ρ) = 1 - 3ρ²(1+ρ)`; lower bound for every ratio.
    pub rho_star: f64,
    /// Upper bound for `ρ_3` and for `ρ_{k+1}` in the middle band.
    pub rho_upper_star: f64,
    /// Lower breakpoint of the three-branch condition.
    pub xi1: f64,
    /// Upper breakpoint of the three-branch condition.
    pub xi2: f64,
    /// Positive root of `1 - 3ρ²(1+ρ)`.
    pub eta1: f64,
    /// `(3 + √13)/2`, positive root of `ρ² - 3ρ - 1`.
    pub eta2: f64,
    /// Lower edge of the square ratio box.
    pub rho_l: f64,
    /// `(3 + √17)/2`, upper edge of the square ratio box.
    pub rho_r: f64,
    /// Largest graded-mesh exponent whose `(ρ_2, ρ_3)` satisfy the `k = 2` cubic clause.
    pub r_limit_thm1: f64,
    /// Largest graded-mesh exponent admitted by the refined splitting.
    pub r_limit_thm3: f64,
}

/// All constants, computed once by bisection on their defining equations.
pub fn constraint_constants() -> &'static ConstraintConstants {
    static CONSTANTS: OnceLock<ConstraintConstants> = OnceLock::new();
    CONSTANTS.get_or_init(compute)
}

fn root<F: Fn(f64) -> f64 + Copy>(lo: f64, hi: f64, f: F) -> f64 {
    let bracket = Bracket::new(lo, hi, f).expect("constant bracket must change sign");
    bisect(bracket, f, 0.0).expect("bisection on a valid bracket")
}

/// `ρ²(1+ρ)/(1 - 3ρ²(1+ρ))`, the upper curve of the ratio condition.
pub(crate) fn lower_band_bound(rho: f64) -> f64 {
    let p = rho * rho * (1.0 + rho);
    p / (1.0 - 3.0 * p)
}

/// `(-ρ² + 4ρ + 2)/(ρ² - 3ρ - 1)`.
pub(crate) fn upper_band_bound(rho: f64) -> f64 {
    (-rho * rho + 4.0 * rho + 2.0) / (rho * rho - 3.0 * rho - 1.0)
}

/// The `k = 2` cubic clause `2 + 2/(1+ρ_3) + 4ρ_2/(1+ρ_2) - ρ_2³/(1+ρ_2)²`.
pub(crate) fn start_clause(rho2: f64, rho3: f64) -> f64 {
    2.0 + 2.0 / (1.0 + rho3) + 4.0 * rho2 / (1.0 + rho2) - rho2.powi(3) / (1.0 + rho2).powi(2)
}

/// Refined `k = 2` clause `4 - 1.4026ρ_3/(1+ρ_3) + 4ρ_2/(1+ρ_2) - ρ_2³/(1+ρ_2)²`.
pub(crate) fn refined_start_clause(rho2: f64, rho3: f64) -> f64 {
    4.0 - 1.4026 * rho3 / (1.0 + rho3) + 4.0 * rho2 / (1.0 + rho2) - rho2.powi(3) / (1.0 + rho2).powi(2)
}

/// `ρ_k` of the graded mesh with exponent `r` (independent of `K` and `T`).
pub fn graded_ratio(k: usize, r: f64) -> f64 {
    let p = |i: usize| (i as f64).powf(r);
    (p(k) - p(k - 1)) / (p(k - 1) - p(k - 2))
}

fn compute() -> ConstraintConstants {
    let rho_star = root(0.3, 0.4, |p| p * (1.0 + p) - (1.0 - 3.0 * p * p * (1.0 + p)));
    let eta1 = root(0.4, 0.5, |p| 1.0 - 3.0 * p * p * (1.0 + p));
    let eta2 = 0.5 * (3.0 + 13f64.sqrt());
    let s = (4.0 + 3.0 * rho_star) / (1.0 + rho_star);
    let rho_upper_star = 0.5 * (s + (s * s + 4.0 * (2.0 + rho_star) / (1.0 + rho_star)).sqrt());
    // cleared denominators: the bound curves have poles at eta1 and eta2
    let xi1 = root(rho_star, eta1, |p| {
        let q = p * p * (1.0 + p);
        q - rho_upper_star * (1.0 - 3.0 * q)
    });
    let xi2 = root(eta2, rho_upper_star, |p| {
        (-p * p + 4.0 * p + 2.0) - rho_upper_star * (p * p - 3.0 * p - 1.0)
    });
    let rho_r = root(3.0, 4.0, |p| 1.0 + 1.0 / (1.0 + p) - p * (p - 2.0) / (1.0 + p));
    let rho_l = root(rho_star, eta1, |p| {
        let q = p * p * (1.0 + p);
        q - rho_r * (1.0 - 3.0 * q)
    });
    let r_limit_thm1 = root(1.0, 4.0, |r| start_clause(graded_ratio(2, r), graded_ratio(3, r)));
    let r_limit_thm3 =
        root(1.0, 4.0, |r| refined_start_clause(graded_ratio(2, r), graded_ratio(3, r)));
    ConstraintConstants {
        rho_star,
        rho_upper_star,
        xi1,
        xi2,
        eta1,
        eta2,
        rho_l,
        rho_r,
        r_limit_thm1,
        r_limit_thm3,
    }
}

impl fmt::Display for ConstraintConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = [
            ("rho_star", self.rho_star),
            ("rho_upper_star", self.rho_upper_star),
            ("xi1", self.xi1),
            ("xi2", self.xi2),
            ("eta1", self.eta1),
            ("eta2", self.eta2),
            ("rho_L", self.rho_l),
            ("rho_R", self.rho_r),
            ("r_limit_thm1", self.r_limit_thm1),
            ("r_limit_thm3", self.r_limit_thm3),
        ];
        for (name, v) in rows {
            writeln!(f, "{name}={v:.12}")?;
        }
        Ok(())
    }
}
