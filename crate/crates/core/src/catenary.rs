//! Generating catenaries σ_a of spherical catenoids.
//!
//! In warped coordinates the catenary at distance `a` from the rotation axis
//! is the graph x = ±ρ(a, y), y ≥ a, with
//!
//! ```text
//! ρ(a,t) = ∫_a^t sinh 2a / (cosh τ · √(sinh²2τ − sinh²2a)) dτ.
//! ```
//!
//! All integrals are evaluated in the shifted variable τ ↦ a + τ, where
//! sinh²(2a+2τ) − sinh²2a factors as sinh 2τ · sinh(4a+2τ). This keeps the
//! inverse square-root singularity at exactly τ = 0 and avoids cancellation.
//! Integrands are assembled in log space so that parameters up to a = 50 do
//! not overflow.

use std::f64::consts::SQRT_2;

use serde::Serialize;

use crate::error::{HypError, Result};
use crate::lemmas::{w_fn, PSI_TERMS};
use crate::quad::{
    integrate_semi_infinite_sqrt_singular, integrate_smooth, integrate_sqrt_singular_lo, Tolerance,
};
use crate::roots::{bisect, expand_bracket};
use crate::special::{acosh1p, cosh2_prod_minus_one, ln_cosh, ln_sinh};

/// Parameters below this are accepted but flagged: the two singular scales of
/// the integrands merge as a → 0.
pub const NEAR_DEGENERATE_A: f64 = 1e-4;

const MAX_A: f64 = 50.0;

/// Beyond this the integrands of x(a,s) and its a-derivative are below e^(−900).
const SMOOTH_TAIL_CUTOFF: f64 = 300.0;

/// Neck parameter a ∈ (0, 50] of the spherical catenoid C_a.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct CatenoidParam(f64);

impl CatenoidParam {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a <= MAX_A) {
            return Err(HypError::domain(format!(
                "catenoid parameter must lie in (0, {MAX_A}], got {a}"
            )));
        }
        Ok(CatenoidParam(a))
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_near_degenerate(self) -> bool {
        self.0 < NEAR_DEGENERATE_A
    }
}

/// A sample of the arc-length parametrized catenary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatenaryPoint {
    pub s: f64,
    pub x: f64,
    pub y: f64,
    pub sin_theta: f64,
}

/// The profile integrand at y = a + τ.
fn profile_integrand(a: f64, tau: f64) -> f64 {
    if tau <= 0.0 {
        return 0.0;
    }
    let l = ln_sinh(2.0 * a)
        - ln_cosh(a + tau)
        - 0.5 * (ln_sinh(2.0 * tau) + ln_sinh(4.0 * a + 2.0 * tau));
    l.exp()
}

/// The integrand h(a,τ) of ϱ′(a).
pub(crate) fn h_integrand(a: f64, tau: f64) -> f64 {
    if tau <= 0.0 {
        return 0.0;
    }
    let base = ln_sinh(a + tau) - 2.0 * ln_cosh(a + tau)
        - 0.5 * ln_sinh(2.0 * tau)
        - 1.5 * ln_sinh(4.0 * a + 2.0 * tau);
    5.0 * (base + 2.0 * ln_cosh(a + tau)).exp() - (base + 2.0 * ln_cosh(3.0 * a + tau)).exp()
}

/// ψ(a,τ) / (16 cosh³(a+τ) √(sinh 2τ · sinh⁵(4a+2τ))), the integrand of ϱ″(a).
pub(crate) fn psi_integrand(a: f64, tau: f64) -> f64 {
    if tau <= 0.0 {
        return 0.0;
    }
    let ln_d = 16f64.ln()
        + 3.0 * ln_cosh(a + tau)
        + 0.5 * ln_sinh(2.0 * tau)
        + 2.5 * ln_sinh(4.0 * a + 2.0 * tau);
    PSI_TERMS
        .iter()
        .map(|&(c, ma, mt)| {
            let arg = ma * a + mt * tau;
            if arg == 0.0 {
                0.0
            } else {
                c * (ln_sinh(arg) - ln_d).exp()
            }
        })
        .sum()
}

fn check_height(a: CatenoidParam, t: f64, what: &str) -> Result<()> {
    if !(t >= a.get()) || !t.is_finite() {
        return Err(HypError::domain(format!(
            "{what} requires t >= a = {}, got {t}",
            a.get()
        )));
    }
    Ok(())
}

/// ρ(a,t) for t ≥ a: the x-coordinate of σ_a at height y = t.
pub fn rho(a: CatenoidParam, t: f64) -> Result<f64> {
    check_height(a, t, "rho")?;
    let a = a.get();
    let r = integrate_sqrt_singular_lo(|tau| profile_integrand(a, tau), 0.0, t - a, &Tolerance::default())?;
    Ok(r.value)
}

/// ϱ(a) = ρ(a, ∞), half the distance between the planes asymptotic to C_a.
pub fn varrho(a: CatenoidParam) -> Result<f64> {
    let a = a.get();
    let r = integrate_semi_infinite_sqrt_singular(|tau| profile_integrand(a, tau), 0.0, &Tolerance::default())?;
    Ok(r.value)
}

/// ϱ′(a) = ∫₀^∞ h(a,t) dt.
pub fn varrho_prime(a: CatenoidParam) -> Result<f64> {
    let a = a.get();
    let r = integrate_semi_infinite_sqrt_singular(|tau| h_integrand(a, tau), 0.0, &Tolerance::default())?;
    Ok(r.value)
}

/// ϱ″(a) = ∫₀^∞ ψ(a,t) / (16 cosh³(a+t) √(sinh 2t · sinh⁵(4a+2t))) dt.
pub fn varrho_second(a: CatenoidParam) -> Result<f64> {
    let a = a.get();
    let r = integrate_semi_infinite_sqrt_singular(|tau| psi_integrand(a, tau), 0.0, &Tolerance::default())?;
    Ok(r.value)
}

/// ∂ρ/∂a (a,t) for t > a: the integral of h over [0, t−a] minus the
/// boundary term from the moving lower limit.
pub fn rho_partial_a(a: CatenoidParam, t: f64) -> Result<f64> {
    check_height(a, t, "rho_partial_a")?;
    let a = a.get();
    if t == a {
        return Err(HypError::domain("rho_partial_a diverges at t = a"));
    }
    let integral = integrate_sqrt_singular_lo(|tau| h_integrand(a, tau), 0.0, t - a, &Tolerance::default())?;
    let boundary = (2.0 * a).sinh() / (t.cosh() * ((2.0 * t - 2.0 * a).sinh() * (2.0 * t + 2.0 * a).sinh()).sqrt());
    Ok(integral.value - boundary)
}

/// ∂²ρ/∂a² (a,t) for t > a.
pub fn rho_partial_aa(a: CatenoidParam, t: f64) -> Result<f64> {
    check_height(a, t, "rho_partial_aa")?;
    let a = a.get();
    if t == a {
        return Err(HypError::domain("rho_partial_aa diverges at t = a"));
    }
    let integral = integrate_sqrt_singular_lo(|tau| psi_integrand(a, tau), 0.0, t - a, &Tolerance::default())?;
    // cosh 4t − cosh 4a = 2 sinh(2t+2a) sinh(2t−2a)
    let gap = 2.0 * (2.0 * t + 2.0 * a).sinh() * (2.0 * t - 2.0 * a).sinh();
    let boundary = t.sinh() * w_fn(a, t) / (SQRT_2 * t.cosh().powi(2) * gap.powf(1.5));
    Ok(integral.value - boundary)
}

/// Arc length along σ_a from the neck to height t: ½ cosh⁻¹(cosh 2t / cosh 2a).
pub fn arclength(a: CatenoidParam, t: f64) -> Result<f64> {
    check_height(a, t, "arclength")?;
    let a = a.get();
    if t > SMOOTH_TAIL_CUTOFF {
        return Ok(0.5 * acosh_from_ln(ln_cosh(2.0 * t) - ln_cosh(2.0 * a)));
    }
    let d = 2.0 * (t + a).sinh() * (t - a).sinh() / (2.0 * a).cosh();
    Ok(0.5 * acosh1p(d))
}

/// cosh⁻¹(X) given ln X, for X too large to represent.
fn acosh_from_ln(ln_x: f64) -> f64 {
    ln_x + (1.0 + (1.0 - (-2.0 * ln_x).exp()).max(0.0).sqrt()).ln()
}

/// cosh(2a)·cosh(2s) − 1 and cosh(2a)·cosh(2s) + 1.
fn x_minus_plus(a: f64, s: f64) -> (f64, f64) {
    let xm1 = cosh2_prod_minus_one(a, s);
    (xm1, xm1 + 2.0)
}

/// Height y(a,s) = ½ cosh⁻¹(cosh 2a · cosh 2s); even in s.
pub fn y_of(a: CatenoidParam, s: f64) -> f64 {
    let a = a.get();
    if a + s.abs() > SMOOTH_TAIL_CUTOFF {
        return 0.5 * acosh_from_ln(ln_cosh(2.0 * a) + ln_cosh(2.0 * s));
    }
    0.5 * acosh1p(cosh2_prod_minus_one(a, s))
}

/// ∂y/∂s = cosh 2a · sinh 2s / √(X² − 1), X = cosh 2a cosh 2s.
pub fn y_s(a: CatenoidParam, s: f64) -> f64 {
    let a = a.get();
    if s == 0.0 {
        return 0.0;
    }
    let (xm1, xp1) = x_minus_plus(a, s);
    let v = (2.0 * a).cosh() * (2.0 * s).sinh() / (xm1 * xp1).sqrt();
    if v.is_finite() {
        v
    } else {
        s.signum()
    }
}

/// ∂y/∂a = sinh 2a · cosh 2s / √(X² − 1).
pub fn y_a(a: CatenoidParam, s: f64) -> f64 {
    let a = a.get();
    let (xm1, xp1) = x_minus_plus(a, s);
    let v = (2.0 * a).sinh() * (2.0 * s).cosh() / (xm1 * xp1).sqrt();
    if v.is_finite() {
        v
    } else {
        1.0
    }
}

fn x_integrand(a: f64, t: f64) -> f64 {
    if t > SMOOTH_TAIL_CUTOFF {
        return 0.0;
    }
    let (xm1, xp1) = x_minus_plus(a, t);
    1.0 / (xm1.sqrt() * xp1)
}

/// ∂x/∂s = √2 sinh 2a / (√(X−1)(X+1)); even in s.
pub fn x_s(a: CatenoidParam, s: f64) -> f64 {
    let a = a.get();
    SQRT_2 * (2.0 * a).sinh() * x_integrand(a, s.abs())
}

/// x(a,s) = √2 sinh 2a ∫₀^s dt / (√(X−1)(X+1)); odd in s.
pub fn x_of(a: CatenoidParam, s: f64) -> Result<f64> {
    let av = a.get();
    let r = integrate_smooth(|t| x_integrand(av, t), 0.0, s.abs(), &Tolerance::default())?;
    Ok(s.signum() * SQRT_2 * (2.0 * av).sinh() * r.value)
}

/// Integrand of ∂x/∂a after differentiating under the integral sign.
fn x_a_integrand(a: f64, t: f64) -> f64 {
    if t > SMOOTH_TAIL_CUTOFF {
        return 0.0;
    }
    let (xm1, xp1) = x_minus_plus(a, t);
    let sq = xm1.sqrt();
    let g = 1.0 / (sq * xp1);
    let dg = -0.5 / (xm1 * sq * xp1) - 1.0 / (sq * xp1 * xp1);
    let sh = (2.0 * a).sinh();
    2.0 * (2.0 * a).cosh() * g + 2.0 * sh * sh * (2.0 * t).cosh() * dg
}

/// ∂x/∂a (a,s); odd in s.
pub fn x_a(a: CatenoidParam, s: f64) -> Result<f64> {
    let av = a.get();
    let r = integrate_smooth(|t| x_a_integrand(av, t), 0.0, s.abs(), &Tolerance::default())?;
    Ok(s.signum() * SQRT_2 * r.value)
}

/// sin θ = sinh 2a / sinh 2y, θ the angle between σ_a and the circles y = const.
pub fn sin_theta(a: CatenoidParam, y: f64) -> Result<f64> {
    check_height(a, y, "sin_theta")?;
    let a = a.get();
    if y == a {
        return Ok(1.0);
    }
    Ok((ln_sinh(2.0 * a) - ln_sinh(2.0 * y)).exp())
}

pub fn catenary_point(a: CatenoidParam, s: f64) -> Result<CatenaryPoint> {
    let y = y_of(a, s).max(a.get());
    Ok(CatenaryPoint {
        s,
        x: x_of(a, s)?,
        y,
        sin_theta: sin_theta(a, y)?,
    })
}

/// Height of σ_a above the abscissa `x` (the y with ρ(a,y) = |x|), or `None`
/// when |x| ≥ ϱ(a) and σ_a never reaches that abscissa.
pub fn catenary_height_at(a: CatenoidParam, x: f64) -> Result<Option<f64>> {
    let x = x.abs();
    if x == 0.0 {
        return Ok(Some(a.get()));
    }
    if x >= varrho(a)? {
        return Ok(None);
    }
    let av = a.get();
    let f = |t: f64| Ok(rho(a, t)? - x);
    let (lo, hi) = expand_bracket(f, av, 0.5, 400.0)?;
    Ok(Some(bisect(f, lo, hi, 1e-12 * hi.max(1.0))?))
}
