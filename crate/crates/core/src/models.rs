//! The hyperboloid, Poincaré ball and upper half space models of H³, the
//! warped (x, y) chart on the half-disk, and the isometries between them.
//!
//! Axis conventions:
//! - hyperboloid → ball sends `(x1, x2, x3, x4)` to `(x3, x4, x2)/(1 + x1)`,
//!   so the hyperboloid `x2` direction becomes the ball `w` axis;
//! - ball → upper half space is the inversion in the sphere of radius √2
//!   about the pole `(0, 0, 1)`, followed by a reflection of
//!   the height coordinate. It sends the origin to `(0, 0, 1)` and the ball
//!   `w` axis onto the `t` axis.

use serde::Serialize;

use crate::error::{HypError, Result};

/// Smallest admissible 1 − |p|² for ball points passed to conversions.
pub const BOUNDARY_MARGIN: f64 = 1e-14;

const HYPERBOLOID_TOL: f64 = 1e-10;

/// A vector in Lorentz space ℝ^{1,3}; points of H³ have ⟨x,x⟩ = −1, x1 ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LorentzVec {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl LorentzVec {
    pub const BASEPOINT: LorentzVec = LorentzVec {
        x1: 1.0,
        x2: 0.0,
        x3: 0.0,
        x4: 0.0,
    };

    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        LorentzVec { x1, x2, x3, x4 }
    }

    /// The hyperboloid point with the given spatial part.
    pub fn from_spatial(x2: f64, x3: f64, x4: f64) -> Self {
        let x1 = (1.0 + x2 * x2 + x3 * x3 + x4 * x4).sqrt();
        LorentzVec { x1, x2, x3, x4 }
    }

    /// A checked point of H³.
    pub fn point(x1: f64, x2: f64, x3: f64, x4: f64) -> Result<Self> {
        let p = LorentzVec { x1, x2, x3, x4 };
        p.check_on_hyperboloid()?;
        Ok(p)
    }

    pub fn check_on_hyperboloid(&self) -> Result<()> {
        let q = lorentz_inner(self, self);
        let scale = self.x1 * self.x1;
        if !q.is_finite() || (q + 1.0).abs() > HYPERBOLOID_TOL * scale.max(1.0) || self.x1 < 1.0 - HYPERBOLOID_TOL {
            return Err(HypError::domain(format!(
                "not on the hyperboloid: <x,x> = {q}, x1 = {}",
                self.x1
            )));
        }
        Ok(())
    }
}

/// A point of the Poincaré ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallPoint {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl BallPoint {
    pub fn new(u: f64, v: f64, w: f64) -> Result<Self> {
        let p = BallPoint { u, v, w };
        p.check()?;
        Ok(p)
    }

    pub fn norm_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v + self.w * self.w
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }

    fn check(&self) -> Result<()> {
        let r2 = self.norm_sq();
        if !r2.is_finite() || 1.0 - r2 < BOUNDARY_MARGIN {
            return Err(HypError::domain(format!(
                "ball point ({}, {}, {}) not in the open ball (|p|² = {r2})",
                self.u, self.v, self.w
            )));
        }
        Ok(())
    }
}

/// A point of the upper half space `{(z, t) : t > 0}`, z = zx + i·zy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperHalfPoint {
    pub zx: f64,
    pub zy: f64,
    pub t: f64,
}

impl UpperHalfPoint {
    pub fn new(zx: f64, zy: f64, t: f64) -> Result<Self> {
        if !(t > 0.0) || !zx.is_finite() || !zy.is_finite() || !t.is_finite() {
            return Err(HypError::domain(format!("upper half point needs t > 0, got t = {t}")));
        }
        Ok(UpperHalfPoint { zx, zy, t })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.zx, self.zy, self.t]
    }
}

/// Warped coordinates: `x` is the signed distance along the rotation axis,
/// `y ≥ 0` the distance from it; the metric is cosh²y·dx² + dy².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WarpedPoint {
    pub x: f64,
    pub y: f64,
}

pub fn lorentz_inner(p: &LorentzVec, q: &LorentzVec) -> f64 {
    -p.x1 * q.x1 + p.x2 * q.x2 + p.x3 * q.x3 + p.x4 * q.x4
}

/// Hyperbolic distance between two points of the hyperboloid.
pub fn lorentz_distance(p: &LorentzVec, q: &LorentzVec) -> f64 {
    (-lorentz_inner(p, q)).max(1.0).acosh()
}

pub fn hyperboloid_to_ball(p: &LorentzVec) -> Result<BallPoint> {
    p.check_on_hyperboloid()?;
    let d = 1.0 + p.x1;
    Ok(BallPoint {
        u: p.x3 / d,
        v: p.x4 / d,
        w: p.x2 / d,
    })
}

pub fn ball_to_hyperboloid(p: &BallPoint) -> Result<LorentzVec> {
    p.check()?;
    let r2 = p.norm_sq();
    let d = 1.0 - r2;
    Ok(LorentzVec {
        x1: (1.0 + r2) / d,
        x2: 2.0 * p.w / d,
        x3: 2.0 * p.u / d,
        x4: 2.0 * p.v / d,
    })
}

/// Inversion in the sphere of radius √2 about (0, 0, 1).
fn invert_about_pole(p: [f64; 3]) -> [f64; 3] {
    let d = [p[0], p[1], p[2] - 1.0];
    let n2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    let k = 2.0 / n2;
    [k * d[0], k * d[1], 1.0 + k * d[2]]
}

pub fn ball_to_upperhalf(p: &BallPoint) -> Result<UpperHalfPoint> {
    p.check()?;
    let q = invert_about_pole(p.as_array());
    Ok(UpperHalfPoint {
        zx: q[0],
        zy: q[1],
        t: -q[2],
    })
}

pub fn upperhalf_to_ball(p: &UpperHalfPoint) -> Result<BallPoint> {
    if !(p.t > 0.0) {
        return Err(HypError::domain(format!("upper half point needs t > 0, got {}", p.t)));
    }
    let q = invert_about_pole([p.zx, p.zy, -p.t]);
    BallPoint::new(q[0], q[1], q[2])
}

/// Hyperbolic distance in the upper half space.
pub fn upperhalf_distance(p: &UpperHalfPoint, q: &UpperHalfPoint) -> f64 {
    let dz2 = (p.zx - q.zx).powi(2) + (p.zy - q.zy).powi(2);
    let dt = p.t - q.t;
    // cosh d = 1 + |Δ|²/(2 t t'), written through sinh(d/2).
    2.0 * ((dz2 + dt * dt) / (4.0 * p.t * q.t)).sqrt().asinh()
}

pub fn warped_from_halfdisk(u: f64, v: f64) -> Result<WarpedPoint> {
    let r2 = u * u + v * v;
    if !r2.is_finite() || 1.0 - r2 < BOUNDARY_MARGIN {
        return Err(HypError::domain(format!("({u}, {v}) not in the open unit disk")));
    }
    if v < 0.0 {
        return Err(HypError::domain(format!("half-disk point needs v >= 0, got {v}")));
    }
    Ok(WarpedPoint {
        x: (2.0 * u / (1.0 + r2)).atanh(),
        y: (2.0 * v / (1.0 - r2)).asinh(),
    })
}

pub fn halfdisk_from_warped(p: &WarpedPoint) -> (f64, f64) {
    let (cx, cy) = (p.x.cosh(), p.y.cosh());
    let d = 1.0 + cx * cy;
    (p.x.sinh() * cy / d, p.y.sinh() / d)
}

/// Hyperbolic distance in the Poincaré ball.
pub fn ball_distance(p: &BallPoint, q: &BallPoint) -> f64 {
    let d2 = (p.u - q.u).powi(2) + (p.v - q.v).powi(2) + (p.w - q.w).powi(2);
    let denom = (1.0 - p.norm_sq()) * (1.0 - q.norm_sq());
    2.0 * (d2 / denom).sqrt().asinh()
}
