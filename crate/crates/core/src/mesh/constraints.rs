use std::fmt;

use super::constants::{constraint_constants, lower_band_bound, start_clause, upper_band_bound};
use super::TimeMesh;
use crate::{Error, Result};

// Relative slack on non-strict comparisons; the constants carry bisection error.
const SLACK: f64 = 1e-12;

fn le(a: f64, b: f64) -> bool {
    a <= b + SLACK * a.abs().max(b.abs())
}

fn ge(a: f64, b: f64) -> bool {
    le(b, a)
}

/// Which ratio-constraint system a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criterion {
    /// `1/ρ_{j+1} >= 1/(ρ_j²(1+ρ_j)) - 3` for `j >= 2`.
    RhoCondition,
    /// Start clause for `(ρ_2, ρ_3)` plus the three-branch condition for `k >= 3`.
    Thm1,
    /// `ρ_L <= ρ_k <= ρ_R` for every `k >= 2`.
    CorollaryBox,
}

impl Criterion {
    pub fn name(self) -> &'static str {
        match self {
            Criterion::RhoCondition => "rho-condition",
            Criterion::Thm1 => "thm1",
            Criterion::CorollaryBox => "corollary",
        }
    }
}

impl std::str::FromStr for Criterion {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rho-condition" => Ok(Criterion::RhoCondition),
            "thm1" => Ok(Criterion::Thm1),
            "corollary" => Ok(Criterion::CorollaryBox),
            other => Err(Error::Domain(format!("unknown criterion `{other}`"))),
        }
    }
}

/// Outcome for one index of a constraint check.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub k: usize,
    pub rho_k: f64,
    pub rho_next: Option<f64>,
    pub pass: bool,
    pub violated: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintReport {
    pub criterion: Criterion,
    pub verdicts: Vec<Verdict>,
    pub pass: bool,
}

impl ConstraintReport {
    fn new(criterion: Criterion, verdicts: Vec<Verdict>) -> Self {
        let pass = verdicts.iter().all(|v| v.pass);
        ConstraintReport { criterion, verdicts, pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.pass)
    }

    pub fn first_failure(&self) -> Option<&Verdict> {
        self.failures().next()
    }
}

impl fmt::Display for ConstraintReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "criterion: {}", self.criterion.name())?;
        for v in &self.verdicts {
            write!(f, "k={} rho_k={:.12}", v.k, v.rho_k)?;
            if let Some(r) = v.rho_next {
                write!(f, " rho_k+1={r:.12}")?;
            }
            write!(f, " {}", if v.pass { "pass" } else { "FAIL" })?;
            if let Some(c) = &v.violated {
                write!(f, " ({c})")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "overall: {}", if self.pass { "pass" } else { "FAIL" })
    }
}

fn require_steps(mesh: &TimeMesh, n: usize, what: &str) -> Result<()> {
    if mesh.n() < n {
        return Err(Error::InvalidMesh(format!(
            "{what} needs at least {n} steps, mesh has {}",
            mesh.n()
        )));
    }
    Ok(())
}

fn verdict(k: usize, rho_k: f64, rho_next: Option<f64>, violated: Option<String>) -> Verdict {
    Verdict { k, rho_k, rho_next, pass: violated.is_none(), violated }
}

/// Condition under which the `d` coefficients are increasing in `j`.
pub fn check_rho_condition(mesh: &TimeMesh) -> Result<ConstraintReport> {
    require_steps(mesh, 3, "the ratio condition")?;
    let verdicts = (2..mesh.n())
        .map(|j| {
            let (rj, rn) = (mesh.rho(j), mesh.rho(j + 1));
            let rhs = 1.0 / (rj * rj * (1.0 + rj)) - 3.0;
            let bad = (!ge(1.0 / rn, rhs)).then(|| format!("1/rho_{} < {rhs:.6}", j + 1));
            verdict(j, rj, Some(rn), bad)
        })
        .collect();
    Ok(ConstraintReport::new(Criterion::RhoCondition, verdicts))
}

/// Start clause on `(ρ_2, ρ_3)` and the three-branch condition on
/// `(ρ_k, ρ_{k+1})` for `3 <= k <= n-1`.
pub fn check_thm1(mesh: &TimeMesh) -> Result<ConstraintReport> {
    require_steps(mesh, 3, "the stability condition")?;
    let c = constraint_constants();
    let mut verdicts = Vec::with_capacity(mesh.n() - 1);

    let (r2, r3) = (mesh.rho(2), mesh.rho(3));
    let start = if !(r2 > c.rho_star) {
        Some("rho_2 <= rho_star".to_string())
    } else if !(r3 > c.rho_star && r3 < c.rho_upper_star) {
        Some("rho_3 outside (rho_star, rho_upper_star)".to_string())
    } else if !ge(start_clause(r2, r3), 0.0) {
        Some(format!("start clause = {:.6e} < 0", start_clause(r2, r3)))
    } else {
        None
    };
    verdicts.push(verdict(2, r2, Some(r3), start));

    for k in 3..mesh.n() {
        let (rk, rn) = (mesh.rho(k), mesh.rho(k + 1));
        let bad = if !(rn > c.rho_star) {
            Some(format!("rho_{} <= rho_star", k + 1))
        } else if rk > c.rho_star && rk < c.xi1 {
            let bound = lower_band_bound(rk);
            (!le(rn, bound)).then(|| format!("lower band: rho_{} > {bound:.6}", k + 1))
        } else if ge(rk, c.xi1) && le(rk, c.xi2) {
            (!(rn < c.rho_upper_star)).then(|| format!("middle band: rho_{} >= rho_upper_star", k + 1))
        } else if rk > c.xi2 && rk < c.rho_upper_star {
            let bound = upper_band_bound(rk);
            (!le(rn, bound)).then(|| format!("upper band: rho_{} > {bound:.6}", k + 1))
        } else {
            Some(format!("rho_{k} outside (rho_star, rho_upper_star)"))
        };
        verdicts.push(verdict(k, rk, Some(rn), bad));
    }
    Ok(ConstraintReport::new(Criterion::Thm1, verdicts))
}

/// `ρ_L <= ρ_k <= ρ_R` for all `k >= 2`.
pub fn check_corollary_box(mesh: &TimeMesh) -> Result<ConstraintReport> {
    require_steps(mesh, 2, "the ratio box")?;
    let c = constraint_constants();
    let verdicts = (2..=mesh.n())
        .map(|k| {
            let r = mesh.rho(k);
            let bad = if !ge(r, c.rho_l) {
                Some("rho_k < rho_L".to_string())
            } else if !le(r, c.rho_r) {
                Some("rho_k > rho_R".to_string())
            } else {
                None
            };
            verdict(k, r, None, bad)
        })
        .collect();
    Ok(ConstraintReport::new(Criterion::CorollaryBox, verdicts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn steps_with_ratios(ratios: &[f64]) -> TimeMesh {
        let mut steps = vec![1.0];
        for r in ratios {
            let last = *steps.last().unwrap();
            steps.push(last * r);
        }
        TimeMesh::from_steps(steps).unwrap()
    }

    #[test]
    fn rho_condition_examples() {
        assert!(check_rho_condition(&TimeMesh::uniform(10, 1.0).unwrap()).unwrap().pass);
        assert!(check_rho_condition(&TimeMesh::graded(50, 2.8, 1.0).unwrap()).unwrap().pass);
        let bad = steps_with_ratios(&[0.3, 10.0]);
        let report = check_rho_condition(&bad).unwrap();
        assert!(!report.pass);
        assert_eq!(report.first_failure().unwrap().k, 2);
        assert!(check_rho_condition(&TimeMesh::uniform(2, 1.0).unwrap()).is_err());
    }

    #[test]
    fn thm1_examples() {
        assert!(check_thm1(&TimeMesh::graded(100, 2.8, 1.0).unwrap()).unwrap().pass);
        let report = check_thm1(&TimeMesh::graded(100, 3.3, 1.0).unwrap()).unwrap();
        assert!(!report.pass);
        let first = report.first_failure().unwrap();
        assert_eq!(first.k, 2);
        assert!(first.violated.as_ref().unwrap().contains("start clause"));
        assert!(check_thm1(&TimeMesh::uniform(10, 1.0).unwrap()).unwrap().pass);
    }

    #[test]
    fn corollary_examples() {
        assert!(check_corollary_box(&TimeMesh::uniform(10, 1.0).unwrap()).unwrap().pass);
        let r = check_corollary_box(&TimeMesh::graded(100, 2.8, 1.0).unwrap()).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure().unwrap().k, 2);
        assert!(check_corollary_box(&TimeMesh::graded(100, 1.5, 1.0).unwrap()).unwrap().pass);
    }

    #[test]
    fn graded_limit_straddles_r_limit() {
        let c = constraint_constants();
        let below = TimeMesh::graded(50, c.r_limit_thm1 - 1e-6, 1.0).unwrap();
        let above = TimeMesh::graded(50, c.r_limit_thm1 + 1e-6, 1.0).unwrap();
        assert!(check_thm1(&below).unwrap().pass);
        assert!(!check_thm1(&above).unwrap().pass);
    }

    #[test]
    fn criterion_names_round_trip() {
        for c in [Criterion::RhoCondition, Criterion::Thm1, Criterion::CorollaryBox] {
            assert_eq!(c.name().parse::<Criterion>().unwrap(), c);
        }
        assert!("bogus".parse::<Criterion>().is_err());
    }
}
