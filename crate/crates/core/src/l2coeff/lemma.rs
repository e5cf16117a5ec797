use std::fmt;

use super::{coeff_row_closed, CoeffRow, FracOrder};
use crate::mesh::{check_rho_condition, TimeMesh};
use crate::{Error, Result};

// Inequalities between differences of coefficients are judged up to this
// multiple of the magnitudes involved, since the differences can be far
// below the size of the coefficients themselves.
const ROUNDOFF_SLACK: f64 = 1e-12;

/// Outcome of one property over its whole index range.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    /// Number of `(k, j)` pairs examined.
    pub checked: usize,
    /// Offending `(k, j, margin)` triples; the margin is negative.
    pub violations: Vec<(usize, usize, f64)>,
    /// False for properties that only follow from the ratio condition when
    /// that condition fails; such results are informative only.
    pub asserted: bool,
}

impl PropertyResult {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LemmaReport {
    pub n: usize,
    pub alpha: f64,
    pub rho_condition: bool,
    pub properties: Vec<PropertyResult>,
}

impl LemmaReport {
    /// Every asserted property holds.
    pub fn all_hold(&self) -> bool {
        self.properties.iter().filter(|p| p.asserted).all(PropertyResult::holds)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} alpha={} rho_condition={}", self.n, self.alpha, self.rho_condition)?;
        for p in &self.properties {
            let state = match (p.holds(), p.asserted) {
                (true, _) => "holds",
                (false, true) => "VIOLATED",
                (false, false) => "fails (not asserted)",
            };
            write!(f, "{}: {} over {} cases", p.name, state, p.checked)?;
            if let Some((k, j, m)) = p.violations.first() {
                write!(f, ", first at k={k} j={j} margin={m:e}")?;
            }
            writeln!(f)?;
        }
        write!(f, "overall: {}", if self.all_hold() { "pass" } else { "FAIL" })
    }
}

struct Acc {
    res: PropertyResult,
}

impl Acc {
    fn new(name: &'static str, asserted: bool) -> Self {
        Acc { res: PropertyResult { name, checked: 0, violations: vec![], asserted } }
    }

    // records whether `margin > 0` up to roundoff in terms of size `scale`
    fn positive(&mut self, k: usize, j: usize, margin: f64, scale: f64) {
        self.res.checked += 1;
        if !(margin > -ROUNDOFF_SLACK * scale) || (margin <= 0.0 && scale == 0.0) {
            self.res.violations.push((k, j, margin));
        }
    }
}

/// Evaluates the sign and monotonicity properties of the L2 weights for rows
/// `2..=n`. Comparisons involving row `k+1` use `k+1 <= n`.
pub fn lemma_properties_check(mesh: &TimeMesh, alpha: FracOrder, n: usize) -> Result<LemmaReport> {
    if n < 4 || n > mesh.n() {
        return Err(Error::OutOfRange { index: n, lo: 4, hi: mesh.n() });
    }
    let rows: Vec<CoeffRow> = (2..=n).map(|k| coeff_row_closed(mesh, alpha, k)).collect::<Result<_>>()?;
    let row = |k: usize| &rows[k - 2];
    let rho_ok = check_rho_condition(&mesh.truncated(n)?)?.pass;

    let mut p = [
        Acc::new("P1", true),
        Acc::new("P2", true),
        Acc::new("P3", true),
        Acc::new("P4", true),
        Acc::new("P5", true),
        Acc::new("P6", true),
        Acc::new("P7", true),
        Acc::new("P8", true),
        Acc::new("P9", rho_ok),
        Acc::new("P10", rho_ok),
    ];

    for k in 2..=n {
        let r = row(k);
        let next = (k < n).then(|| row(k + 1));
        for j in 1..k {
            p[0].positive(k, j, -r.a(j), r.a(j).abs());
            p[4].positive(k, j, r.c(j), r.c(j).abs());
            if let Some(s) = next {
                p[1].positive(k, j, s.a(j) - r.a(j), s.a(j).abs() + r.a(j).abs());
                p[5].positive(k, j, r.c(j) - s.c(j), s.c(j).abs() + r.c(j).abs());
            }
        }
        for j in 1..k.saturating_sub(1) {
            p[2].positive(k, j, r.a(j) - r.a(j + 1), r.a(j).abs() + r.a(j + 1).abs());
            if let Some(s) = next {
                let m = (s.a(j + 1) - s.a(j)) - (r.a(j + 1) - r.a(j));
                let sc = s.a(j + 1).abs() + s.a(j).abs() + r.a(j + 1).abs() + r.a(j).abs();
                p[3].positive(k, j, m, sc);
            }
        }
        for j in 2..k {
            p[6].positive(k, j, r.d(j), r.d(j).abs());
            if let Some(s) = next {
                p[7].positive(k, j, r.d(j) - s.d(j), s.d(j).abs() + r.d(j).abs());
            }
        }
        for j in 2..k.saturating_sub(1) {
            p[8].positive(k, j, r.d(j + 1) - r.d(j), r.d(j + 1).abs() + r.d(j).abs());
            if let Some(s) = next {
                let m = (r.d(j + 1) - r.d(j)) - (s.d(j + 1) - s.d(j));
                let sc = s.d(j + 1).abs() + s.d(j).abs() + r.d(j + 1).abs() + r.d(j).abs();
                p[9].positive(k, j, m, sc);
            }
        }
    }

    Ok(LemmaReport {
        n,
        alpha: alpha.value(),
        rho_condition: rho_ok,
        properties: p.into_iter().map(|a| a.res).collect(),
    })
}
