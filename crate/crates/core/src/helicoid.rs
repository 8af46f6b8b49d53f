//! Helicoids H_ā in the three models and their conjugate catenoids.
//!
//! H_ā is ruled by geodesics orthogonal to its axis, screwing at rate ā per
//! unit translation. Its conjugate minimal surface is a catenoid: spherical
//! for ā > 1 (with ā = coth a), parabolic for ā = 1, hyperbolic for
//! 0 < ā < 1; ā = 0 is a totally geodesic plane. Stability transfers along
//! the conjugacy, so H_ā is globally stable iff ā ≤ ā_c = coth a_c and has
//! infinite Morse index otherwise.

use serde::Serialize;

use crate::error::{HypError, Result};
use crate::jacobi::find_a_c;
use crate::models::{BallPoint, LorentzVec, UpperHalfPoint};

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct HelicoidPitch(f64);

impl HelicoidPitch {
    pub fn new(abar: f64) -> Result<Self> {
        if !(abar >= 0.0) || !abar.is_finite() {
            return Err(HypError::domain(format!("helicoid pitch must be finite and >= 0, got {abar}")));
        }
        Ok(HelicoidPitch(abar))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConjugateKind {
    /// ā = 0: the helicoid is a totally geodesic plane.
    Plane,
    Spherical,
    Hyperbolic,
    Parabolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConjugacyRelation {
    pub kind: ConjugateKind,
    /// ã > 1/2 for spherical and hyperbolic conjugates.
    pub atilde: Option<f64>,
    /// The neck parameter a with 2ã = cosh 2a, spherical conjugates only.
    pub a_ball: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HelicoidStability {
    GloballyStable,
    UnstableInfiniteIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilityClassHelicoid {
    pub pitch: f64,
    pub kind: HelicoidStability,
    pub conjugate: ConjugacyRelation,
    /// ā_c = coth a_c.
    pub threshold: f64,
}

pub fn helicoid_hyperboloid(abar: HelicoidPitch, u: f64, v: f64) -> LorentzVec {
    let ab = abar.get();
    let (cu, su) = (u.cosh(), u.sinh());
    LorentzVec {
        x1: cu * v.cosh(),
        x2: cu * v.sinh(),
        x3: su * (ab * v).cos(),
        x4: su * (ab * v).sin(),
    }
}

pub fn helicoid_ball(abar: HelicoidPitch, u: f64, v: f64) -> BallPoint {
    let ab = abar.get();
    let (cu, su) = (u.cosh(), u.sinh());
    let d = 1.0 + cu * v.cosh();
    BallPoint {
        u: su * (ab * v).cos() / d,
        v: su * (ab * v).sin() / d,
        w: cu * v.sinh() / d,
    }
}

/// z = e^(v + iāv)·tanh u, t = e^v·sech u.
pub fn helicoid_upperhalf(abar: HelicoidPitch, u: f64, v: f64) -> UpperHalfPoint {
    let ab = abar.get();
    let r = v.exp() * u.tanh();
    UpperHalfPoint {
        zx: r * (ab * v).cos(),
        zy: r * (ab * v).sin(),
        t: v.exp() / u.cosh(),
    }
}

fn check_atilde(atilde: f64) -> Result<()> {
    if !(atilde > 0.5) || !atilde.is_finite() {
        return Err(HypError::domain(format!("conjugacy parameter must exceed 1/2, got {atilde}")));
    }
    Ok(())
}

/// ā = √((ã + ½)/(ã − ½)), the pitch conjugate to a spherical catenoid.
pub fn pitch_from_spherical(atilde: f64) -> Result<HelicoidPitch> {
    check_atilde(atilde)?;
    HelicoidPitch::new(((atilde + 0.5) / (atilde - 0.5)).sqrt())
}

/// ā = √((ã − ½)/(ã + ½)), the pitch conjugate to a hyperbolic catenoid.
pub fn pitch_from_hyperbolic(atilde: f64) -> Result<HelicoidPitch> {
    check_atilde(atilde)?;
    HelicoidPitch::new(((atilde - 0.5) / (atilde + 0.5)).sqrt())
}

/// ā_c = coth a_c, about 2.17968.
pub fn critical_pitch() -> Result<f64> {
    Ok(1.0 / find_a_c()?.tanh())
}

pub fn conjugate_of(abar: HelicoidPitch) -> ConjugacyRelation {
    let ab = abar.get();
    let ab2 = ab * ab;
    if ab == 0.0 {
        ConjugacyRelation {
            kind: ConjugateKind::Plane,
            atilde: None,
            a_ball: None,
        }
    } else if ab < 1.0 {
        ConjugacyRelation {
            kind: ConjugateKind::Hyperbolic,
            atilde: Some((1.0 + ab2) / (2.0 * (1.0 - ab2))),
            a_ball: None,
        }
    } else if ab == 1.0 {
        ConjugacyRelation {
            kind: ConjugateKind::Parabolic,
            atilde: None,
            a_ball: None,
        }
    } else {
        ConjugacyRelation {
            kind: ConjugateKind::Spherical,
            atilde: Some((ab2 + 1.0) / (2.0 * (ab2 - 1.0))),
            // coth⁻¹ ā
            a_ball: Some(0.5 * ((ab + 1.0) / (ab - 1.0)).ln()),
        }
    }
}

pub fn classify_helicoid(abar: HelicoidPitch) -> Result<StabilityClassHelicoid> {
    let threshold = critical_pitch()?;
    let kind = if abar.get() <= threshold {
        HelicoidStability::GloballyStable
    } else {
        HelicoidStability::UnstableInfiniteIndex
    };
    Ok(StabilityClassHelicoid {
        pitch: abar.get(),
        kind,
        conjugate: conjugate_of(abar),
        threshold,
    })
}
