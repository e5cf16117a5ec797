use crate::{Error, Result};

/// A sign-changing interval `[lo, hi]` for a scalar function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    /// Evaluates `f` at both ends and checks `lo < hi`, `f(lo) * f(hi) <= 0`.
    pub fn new<F: Fn(f64) -> f64>(lo: f64, hi: f64, f: F) -> Result<Self> {
        let b = Bracket { lo, hi, f_lo: f(lo), f_hi: f(hi) };
        b.validate()?;
        Ok(b)
    }

    fn validate(&self) -> Result<()> {
        let ok = self.lo < self.hi
            && self.f_lo.is_finite()
            && self.f_hi.is_finite()
            && self.f_lo * self.f_hi <= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidBracket { lo: self.lo, hi: self.hi, f_lo: self.f_lo, f_hi: self.f_hi })
        }
    }
}

/// Bisection until the bracket is narrower than `tol` (or cannot shrink further).
pub fn bisect<F: Fn(f64) -> f64>(b: Bracket, f: F, tol: f64) -> Result<f64> {
    b.validate()?;
    if b.f_lo == 0.0 {
        return Ok(b.lo);
    }
    if b.f_hi == 0.0 {
        return Ok(b.hi);
    }
    let (mut lo, mut hi, mut f_lo) = (b.lo, b.hi, b.f_lo);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_two() {
        let f = |x: f64| x * x - 2.0;
        let r = bisect(Bracket::new(1.0, 2.0, f).unwrap(), f, 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-11);
    }

    #[test]
    fn rho_star_and_eta1_equations() {
        let f = |p: f64| p * (1.0 + p) - (1.0 - 3.0 * p * p * (1.0 + p));
        let r = bisect(Bracket::new(0.3, 0.4, f).unwrap(), f, 1e-12).unwrap();
        assert!((r - 0.356341).abs() < 1e-5);
        let g = |p: f64| 1.0 - 3.0 * p * p * (1.0 + p);
        let r = bisect(Bracket::new(0.4, 0.5, g).unwrap(), g, 1e-12).unwrap();
        assert!((r - 0.475329).abs() < 1e-5);
    }

    #[test]
    fn invalid_brackets() {
        let f = |x: f64| x * x + 1.0;
        assert!(matches!(Bracket::new(0.0, 1.0, f), Err(Error::InvalidBracket { .. })));
        assert!(Bracket::new(1.0, 0.0, |x| x - 0.5).is_err());
    }

    #[test]
    fn full_precision_when_tol_zero() {
        let f = |x: f64| x * x - 2.0;
        let r = bisect(Bracket::new(1.0, 2.0, f).unwrap(), f, 0.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() <= 2.0 * f64::EPSILON);
    }
}
