//! Least-area threshold for spherical catenoids.
//!
//! By the coarea formula the band of C_a between heights a and y1 has area
//! 4π∫ sinh t · sinh 2t / √(sinh²2t − sinh²2a) dt, while the two geodesic
//! disks spanning its boundary circles have area 4π(cosh y1 − 1). The
//! deficit f(a) = ∫_a^∞ sinh t (sinh 2t/√(sinh²2t − sinh²2a) − 1) dt is
//! bounded by K·cosh a, which gives band < disks for all y1 once
//! a ≥ a_l = cosh⁻¹(1/(1 − K)).

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::catenary::{rho, varrho, CatenoidParam};
use crate::error::{HypError, Result};
use crate::jacobi::find_a_c;
use crate::quad::{integrate_semi_infinite_sqrt_singular, integrate_sqrt_singular_lo, Tolerance};
use crate::special::ln_sinh;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaComparison {
    pub a: f64,
    pub y1: f64,
    pub x1: f64,
    pub band_area: f64,
    pub disks_area: f64,
    pub band_smaller: bool,
}

/// ln sinh(2a+2τ) and ½ ln(sinh 2τ · sinh(4a+2τ)) = ln √(sinh²(2a+2τ) − sinh²2a).
fn ln_s_and_root_p(a: f64, tau: f64) -> (f64, f64) {
    let ln_s = ln_sinh(2.0 * a + 2.0 * tau);
    let ln_root_p = 0.5 * (ln_sinh(2.0 * tau) + ln_sinh(4.0 * a + 2.0 * tau));
    (ln_s, ln_root_p)
}

/// sinh(a+τ)·(S/√P − 1), written as sinh(a+τ)·sinh²2a / (√P (S + √P)).
fn deficit_integrand(a: f64, tau: f64) -> f64 {
    if tau <= 0.0 {
        return 0.0;
    }
    let (ln_s, ln_root_p) = ln_s_and_root_p(a, tau);
    let ln_sum = ln_s + (ln_root_p - ln_s).exp().ln_1p();
    (ln_sinh(a + tau) + 2.0 * ln_sinh(2.0 * a) - ln_root_p - ln_sum).exp()
}

fn band_integrand(a: f64, tau: f64) -> f64 {
    if tau <= 0.0 {
        return 0.0;
    }
    let (ln_s, ln_root_p) = ln_s_and_root_p(a, tau);
    (ln_sinh(a + tau) + ln_s - ln_root_p).exp()
}

/// f(a) = ∫_a^∞ sinh t · (sinh 2t/√(sinh²2t − sinh²2a) − 1) dt.
pub fn area_deficit(a: CatenoidParam) -> Result<f64> {
    let a = a.get();
    Ok(integrate_semi_infinite_sqrt_singular(|tau| deficit_integrand(a, tau), 0.0, &Tolerance::default())?.value)
}

/// K = ∫₀¹ x⁻²(1/√(1−x⁴) − 1) dx, about 0.40093.
pub fn k_const() -> Result<f64> {
    // With y = 1 − x the integrand is x²/(√q (1 + √q)), q = y(1+x)(1+x²),
    // which has an inverse square-root singularity at y = 0.
    let f = |y: f64| {
        let x = 1.0 - y;
        let q = y * (1.0 + x) * (1.0 + x * x);
        let r = q.sqrt();
        x * x / (r * (1.0 + r))
    };
    Ok(integrate_sqrt_singular_lo(f, 0.0, 1.0, &Tolerance::default())?.value)
}

static A_L: OnceLock<f64> = OnceLock::new();

/// a_l = cosh⁻¹(1/(1 − K)), about 1.10055. Computed once per process.
pub fn a_l_const() -> Result<f64> {
    if let Some(&v) = A_L.get() {
        return Ok(v);
    }
    let v = (1.0 / (1.0 - k_const()?)).acosh();
    Ok(*A_L.get_or_init(|| v))
}

/// Area of the catenoid band between the heights a and y1.
pub fn band_area(a: CatenoidParam, y1: f64) -> Result<f64> {
    let av = a.get();
    if !(y1 > av) || !y1.is_finite() {
        return Err(HypError::domain(format!("band_area needs y1 > a = {av}, got {y1}")));
    }
    let r = integrate_sqrt_singular_lo(|tau| band_integrand(av, tau), 0.0, y1 - av, &Tolerance::default())?;
    Ok(4.0 * PI * r.value)
}

/// Combined area of the two geodesic disks of radius y1.
pub fn disk_pair_area(y1: f64) -> Result<f64> {
    if !(y1 >= 0.0) || !y1.is_finite() {
        return Err(HypError::domain(format!("disk_pair_area needs y1 >= 0, got {y1}")));
    }
    // cosh y − 1 = 2 sinh²(y/2)
    Ok(8.0 * PI * (0.5 * y1).sinh().powi(2))
}

pub fn compare_areas(a: CatenoidParam, y1: f64) -> Result<AreaComparison> {
    let band = band_area(a, y1)?;
    let disks = disk_pair_area(y1)?;
    Ok(AreaComparison {
        a: a.get(),
        y1,
        x1: rho(a, y1)?,
        band_area: band,
        disks_area: disks,
        band_smaller: band < disks,
    })
}

/// δ = cosh ϱ(a_c) − 1, about 0.128222. Two congruent boundary circles of
/// diameter d at gap D bound two catenoids iff D/d ≤ δ.
pub fn oliveira_soret_delta() -> Result<f64> {
    let v = varrho(CatenoidParam::new(find_a_c()?)?)?;
    Ok(2.0 * (0.5 * v).sinh().powi(2))
}
