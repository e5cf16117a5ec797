use crate::{Error, Result};

/// `base_big^p - base_small^p` without cancellation.
///
/// Evaluated as `s^p * expm1(p * ln1p((b - s)/s))`; the difference `b - s`
/// is formed once, so the result is only as accurate as that gap. When the gap
/// is known independently use [`pow_diff_gap`].
pub fn pow_diff(base_big: f64, base_small: f64, p: f64) -> Result<f64> {
    if !(base_small > 0.0) || !(base_big > 0.0) {
        return Err(Error::Domain(format!(
            "pow_diff needs positive bases, got ({base_big}, {base_small})"
        )));
    }
    pow_diff_gap(base_small, base_big - base_small, p)
}

/// `(small + gap)^p - small^p` for `small > 0`, `gap >= 0`.
pub fn pow_diff_gap(small: f64, gap: f64, p: f64) -> Result<f64> {
    if !(small > 0.0) || !(gap >= 0.0) || !p.is_finite() {
        return Err(Error::Domain(format!(
            "pow_diff_gap needs small > 0 and gap >= 0, got ({small}, {gap}, p = {p})"
        )));
    }
    Ok(small.powf(p) * (p * (gap / small).ln_1p()).exp_m1())
}
