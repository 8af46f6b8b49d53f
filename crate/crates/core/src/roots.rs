//! Bisection and geometric bracket expansion.

use crate::error::{HypError, Result};

/// Bisection on `[lo, hi]` for a function with a sign change, to absolute
/// tolerance `xtol` in the argument.
pub fn bisect<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut flo = f(lo)?;
    let fhi = f(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(HypError::Bracket(format!(
            "no sign change on [{lo}, {hi}] (f = {flo:e}, {fhi:e})"
        )));
    }
    while hi - lo > xtol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Starting from `origin`, where `f` is assumed to have the sign of
/// `f(origin)`, tries `origin + start`, `origin + 2·start`, … until the sign
/// changes or the offset exceeds `limit`. Returns the bracketing pair.
pub fn expand_bracket<F>(f: F, origin: f64, start: f64, limit: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let f0 = f(origin)?;
    let mut prev = origin;
    let mut step = start;
    while step <= limit {
        let x = origin + step;
        let fx = f(x)?;
        if fx == 0.0 || fx.signum() != f0.signum() {
            return Ok((prev, x));
        }
        prev = x;
        step *= 2.0;
    }
    Err(HypError::Bracket(format!(
        "no sign change within {limit} of {origin}"
    )))
}
