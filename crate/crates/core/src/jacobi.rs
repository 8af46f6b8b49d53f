//! Jacobi fields on spherical catenoids and the stability classification.
//!
//! Two Jacobi fields on C_a come from geometry: the vertical field ζ, induced
//! by translation along the rotation axis, and the variation field ξ, induced
//! by moving the parameter a. ζ is odd in arc length and vanishes only at
//! the neck; ξ is even with ξ(a,0) = 1. C_a is unstable with index one
//! exactly when ξ changes sign, i.e. when a < a_c, the unique zero of ϱ′.
//! The first positive zero z(a) of ξ bounds the maximal weakly stable piece
//! and is where σ_a touches the envelope of the family {σ_a}.
//!
//! On the two expressions for E(a): the independent route via the integral of
//! I(a,t) gives ∫₀^∞ I dt = ϱ′(a)/√2 and hence √2∫₀^∞ I dt = ϱ′(a) = d/da x(a,∞).
//! [`e_of`] returns ϱ′/√2; [`e_from_jacobi_integral`] and
//! [`x_infinity_derivative`] expose the two quadrature routes.

use std::f64::consts::SQRT_2;
use std::sync::OnceLock;

use serde::Serialize;

use crate::catenary::{rho, varrho, varrho_prime, x_a, x_of, x_s, y_a, y_of, y_s, CatenoidParam};
use crate::error::{HypError, Result};
use crate::leastarea::a_l_const;
use crate::quad::{integrate_semi_infinite, integrate_smooth, Tolerance};
use crate::roots::{bisect, expand_bracket};
use crate::special::cosh2_prod_minus_one;

const A_C_BRACKET: (f64, f64) = (0.4, 0.6);
const A_C_TOL: f64 = 1e-8;
const Z_TOL: f64 = 1e-8;
const Z_START: f64 = 0.5;
const Z_LIMIT: f64 = 100.0;
const I_TAIL_CUTOFF: f64 = 300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CatenoidStability {
    UnstableIndexOne,
    GloballyStable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityClassCatenoid {
    pub a: f64,
    pub kind: CatenoidStability,
    pub least_area: bool,
    /// First positive zero of ξ, present exactly when unstable.
    pub z: Option<f64>,
    #[serde(rename = "E")]
    pub e: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnvelopePoint {
    pub a: f64,
    pub z: f64,
    pub x: f64,
    pub y: f64,
    pub tangency_residual: f64,
}

/// The upper symmetric intersection point (x, y) of two catenaries; the
/// other one is (−x, y).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CatenaryIntersection {
    pub x: f64,
    pub y: f64,
}

/// f(a,s) = sinh²2a·cosh 2s / (cosh²2a·cosh²2s − 1).
pub fn f_coef(a: CatenoidParam, s: f64) -> f64 {
    let a = a.get();
    let xm1 = cosh2_prod_minus_one(a, s);
    let sh = (2.0 * a).sinh();
    sh * sh * (2.0 * s).cosh() / (xm1 * (xm1 + 2.0))
}

/// I(a,t) = n(A,T)/d(A,T) with A = cosh 2a, T = cosh 2t,
/// n = A(3−A²)T² + (A²−1)T − 2A and d = (AT+1)²(AT−1)^(3/2).
pub fn i_integrand(a: CatenoidParam, t: f64) -> f64 {
    let a = a.get();
    if t.abs() > I_TAIL_CUTOFF {
        return 0.0;
    }
    let big_a = (2.0 * a).cosh();
    let inv_t = 1.0 / (2.0 * t).cosh();
    let xm1 = cosh2_prod_minus_one(a, t);
    // Numerator and denominator both divided by T².
    let n = big_a * (3.0 - big_a * big_a) + (big_a * big_a - 1.0) * inv_t - 2.0 * big_a * inv_t * inv_t;
    let d = (big_a + inv_t).powi(2) * xm1 * xm1.sqrt();
    n / d
}

/// ζ(a,s) = √2·cosh(y(a,s))·y_s(a,s); odd in s.
pub fn zeta(a: CatenoidParam, s: f64) -> f64 {
    SQRT_2 * y_of(a, s).cosh() * y_s(a, s)
}

/// The simplified form cosh 2a·sinh 2s / √(cosh 2a·cosh 2s − 1) of ζ.
pub fn zeta_alternate(a: CatenoidParam, s: f64) -> f64 {
    let av = a.get();
    (2.0 * av).cosh() * (2.0 * s).sinh() / cosh2_prod_minus_one(av, s).sqrt()
}

/// x_a·y_s − x_s·y_a: vanishes where σ_a is tangent to the envelope.
pub fn tangency(a: CatenoidParam, s: f64) -> Result<f64> {
    Ok(x_a(a, s)? * y_s(a, s) - x_s(a, s) * y_a(a, s))
}

/// ξ(a,s) = −cosh y · (x_a y_s − x_s y_a); even in s, ξ(a,0) = 1.
pub fn xi(a: CatenoidParam, s: f64) -> Result<f64> {
    let s = s.abs();
    Ok(-y_of(a, s).cosh() * tangency(a, s)?)
}

/// ξ(a,s) = f(a,s) − ζ(a,s)·∫₀^s I(a,t) dt, the cross-check form of ξ.
pub fn xi_form_ii(a: CatenoidParam, s: f64) -> Result<f64> {
    let s = s.abs();
    let r = integrate_smooth(|t| i_integrand(a, t), 0.0, s, &Tolerance::default())?;
    Ok(f_coef(a, s) - zeta(a, s) * r.value)
}

/// E(a) = ϱ′(a)/√2; positive exactly for a < a_c.
pub fn e_of(a: CatenoidParam) -> Result<f64> {
    Ok(varrho_prime(a)? / SQRT_2)
}

/// ∫₀^∞ I(a,t) dt, an independent evaluation of E(a).
pub fn e_from_jacobi_integral(a: CatenoidParam) -> Result<f64> {
    Ok(integrate_semi_infinite(|t| i_integrand(a, t), 0.0, &Tolerance::default())?.value)
}

/// d/da x(a,∞) = √2 ∫₀^∞ I(a,t) dt, which equals ϱ′(a).
pub fn x_infinity_derivative(a: CatenoidParam) -> Result<f64> {
    Ok(SQRT_2 * e_from_jacobi_integral(a)?)
}

static A_C: OnceLock<f64> = OnceLock::new();

/// a_c, the unique zero of ϱ′, by bisection on [0.4, 0.6] to 1e-8.
/// Computed once per process.
pub fn find_a_c() -> Result<f64> {
    if let Some(&v) = A_C.get() {
        return Ok(v);
    }
    let f = |a: f64| varrho_prime(CatenoidParam::new(a)?);
    let (lo, hi) = A_C_BRACKET;
    let (flo, fhi) = (f(lo)?, f(hi)?);
    if !(flo > 0.0 && fhi < 0.0) {
        return Err(HypError::Bracket(format!(
            "varrho' does not change sign on [{lo}, {hi}] ({flo:e}, {fhi:e})"
        )));
    }
    let v = bisect(f, lo, hi, A_C_TOL)?;
    Ok(*A_C.get_or_init(|| v))
}

/// z(a): the first positive zero of ξ(a,·), for a < a_c.
pub fn find_z(a: CatenoidParam) -> Result<f64> {
    let e = e_of(a)?;
    if e <= 0.0 {
        return Err(HypError::domain(format!(
            "xi has no zero for a = {} (E = {e:e} <= 0, C_a is stable)",
            a.get()
        )));
    }
    let f = |s: f64| xi(a, s);
    let (lo, hi) = expand_bracket(f, 0.0, Z_START, Z_LIMIT)?;
    bisect(f, lo, hi, Z_TOL)
}

pub fn classify_catenoid(a: CatenoidParam) -> Result<StabilityClassCatenoid> {
    let a_c = find_a_c()?;
    let e = e_of(a)?;
    let (kind, z) = if a.get() < a_c {
        (CatenoidStability::UnstableIndexOne, Some(find_z(a)?))
    } else {
        (CatenoidStability::GloballyStable, None)
    };
    Ok(StabilityClassCatenoid {
        a: a.get(),
        kind,
        least_area: a.get() >= a_l_const()?,
        z,
        e,
    })
}

/// The symmetric intersection of σ_{a1} and σ_{a2} for a1 < a2, present iff
/// ϱ(a1) < ϱ(a2). The height is the root of δ(t) = ρ(a2,t) − ρ(a1,t) on
/// [a2, ∞), where δ is strictly increasing and δ(a2) < 0.
pub fn intersect_catenaries(a1: CatenoidParam, a2: CatenoidParam) -> Result<Option<CatenaryIntersection>> {
    if !(a1.get() < a2.get()) {
        return Err(HypError::domain(format!(
            "intersect_catenaries needs a1 < a2, got {} and {}",
            a1.get(),
            a2.get()
        )));
    }
    if varrho(a1)? >= varrho(a2)? {
        return Ok(None);
    }
    let delta = |t: f64| Ok(rho(a2, t)? - rho(a1, t)?);
    let (lo, hi) = expand_bracket(delta, a2.get(), 0.5, 400.0)?;
    let y = bisect(delta, lo, hi, 1e-12 * hi.max(1.0))?;
    Ok(Some(CatenaryIntersection { x: rho(a1, y)?, y }))
}

/// The point where σ_a touches the envelope of the unstable family.
pub fn envelope_point(a: CatenoidParam) -> Result<EnvelopePoint> {
    let z = find_z(a)?;
    Ok(EnvelopePoint {
        a: a.get(),
        z,
        x: x_of(a, z)?,
        y: y_of(a, z),
        tangency_residual: tangency(a, z)?,
    })
}
