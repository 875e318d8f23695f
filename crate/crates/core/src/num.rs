//! Tolerance-aware comparisons for edge costs and derived quantities.
//!
//! Costs are conceptually exact; in `f64` they accumulate rounding, so every
//! equality or boundary decision (dominance, budget admission, skyline
//! ordering) goes through these helpers with a single shared epsilon.

/// Absolute tolerance for all cost comparisons.
pub const COST_EPS: f64 = 1e-9;

#[inline]
pub fn approx_eq(a: f64, b: f64) -> bool {
    (a - b).abs() <= COST_EPS
}

#[inline]
pub fn approx_le(a: f64, b: f64) -> bool {
    a <= b + COST_EPS
}

#[inline]
pub fn approx_lt(a: f64, b: f64) -> bool {
    a < b - COST_EPS
}

#[inline]
pub fn approx_ge(a: f64, b: f64) -> bool {
    approx_le(b, a)
}

#[inline]
pub fn approx_gt(a: f64, b: f64) -> bool {
    approx_lt(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_cases() {
        assert!(approx_eq(1.0, 1.0 + 1e-12));
        assert!(approx_le(1.0, 1.0));
        assert!(!approx_lt(1.0, 1.0));
        assert!(approx_lt(1.0, 1.0 + 1e-6));
        assert!(approx_gt(2.0, 1.0));
        assert!(!approx_gt(1.0 + 1e-12, 1.0));
    }
}
