//! Overflow-safe logarithms of hyperbolic functions and related helpers.

use std::f64::consts::LN_2;

/// ln sinh(x) for x > 0, finite for arguments far beyond the overflow of sinh.
pub(crate) fn ln_sinh(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    x + (-(-2.0 * x).exp_m1()).ln() - LN_2
}

/// ln cosh(x), finite for any real x.
pub(crate) fn ln_cosh(x: f64) -> f64 {
    let ax = x.abs();
    ax + (-2.0 * ax).exp().ln_1p() - LN_2
}

/// acosh(1 + d) for d ≥ 0 without cancellation near d = 0.
pub(crate) fn acosh1p(d: f64) -> f64 {
    (d + (d * (d + 2.0)).sqrt()).ln_1p()
}

/// cosh(2a)·cosh(2t) − 1 computed without cancellation.
pub(crate) fn cosh2_prod_minus_one(a: f64, t: f64) -> f64 {
    let p = (a + t).sinh();
    let m = (a - t).sinh();
    p * p + m * m
}
