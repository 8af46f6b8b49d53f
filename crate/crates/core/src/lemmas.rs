//! Grid verification of the sign inequalities behind the stability
//! classification: φ ≤ 0, ψ < 0, w ≥ sinh 6a, ∂ρ/∂a < 0 on R₃ and
//! ∂²ρ/∂a² < 0 on R₄, together with the closed-form constants A₃ and A₄.
//!
//! Verdicts are sampled evidence, not certificates. Unbounded t ranges are
//! truncated at t = a + 30: each expression is governed by its dominant
//! exponential term beyond that height, so the worst point is interior.

use rayon::prelude::*;
use serde::Serialize;

use crate::catenary::{rho, rho_partial_a, rho_partial_aa, CatenoidParam};
use crate::error::{HypError, Result};

/// ψ(a,t) = Σ c·sinh(m_a·a + m_t·t) over these (c, m_a, m_t).
pub const PSI_TERMS: [(f64, f64, f64); 8] = [
    (76.0, 2.0, 0.0),
    (-22.0, 0.0, 2.0),
    (29.0, 4.0, 2.0),
    (1.0, 8.0, 2.0),
    (-26.0, 6.0, 4.0),
    (-6.0, 10.0, 4.0),
    (-25.0, 8.0, 6.0),
    (1.0, 12.0, 6.0),
];

/// Absolute slack granted to non-strict inequalities, absorbing round-off at
/// points where the expression vanishes exactly (e.g. φ(A₃, 0)).
pub const NON_STRICT_SLACK: f64 = 1e-12;

/// Height above the diagonal at which sampled t ranges are truncated.
pub const T_TRUNCATION: f64 = 30.0;

const FD_STEP: f64 = 1e-4;
const FD_TOL: f64 = 1e-4;
const FD_MIN_GAP: f64 = 0.1;

/// A₃ = cosh⁻¹(√(3+√5)/2), the root of √5·cosh a = cosh 3a.
pub fn a3_const() -> f64 {
    ((3.0 + 5f64.sqrt()).sqrt() / 2.0).acosh()
}

/// A₄ = ¼ cosh⁻¹((35+√1241)/8), where 4X² − 35X − 1 = 0 for X = cosh 4A₄.
pub fn a4_const() -> f64 {
    0.25 * ((35.0 + 1241f64.sqrt()) / 8.0).acosh()
}

pub fn phi_fn(a: f64, t: f64) -> f64 {
    5f64.sqrt() * (a + t).cosh() - (3.0 * a + t).cosh()
}

pub fn psi_fn(a: f64, t: f64) -> f64 {
    PSI_TERMS
        .iter()
        .map(|&(c, ma, mt)| c * (ma * a + mt * t).sinh())
        .sum()
}

pub fn w_fn(a: f64, t: f64) -> f64 {
    -5.0 * (2.0 * a).sinh() + (6.0 * a).sinh() - 7.0 * (2.0 * a - 4.0 * t).sinh()
        - 12.0 * (2.0 * a - 2.0 * t).sinh()
        + 4.0 * (2.0 * a + 2.0 * t).sinh()
        + (2.0 * a + 4.0 * t).sinh()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Negative,
    NonPositive,
    Positive,
    NonNegative,
}

impl Sign {
    fn satisfied(self, v: f64) -> bool {
        match self {
            Sign::Negative => v < 0.0,
            Sign::NonPositive => v <= NON_STRICT_SLACK,
            Sign::Positive => v > 0.0,
            Sign::NonNegative => v >= -NON_STRICT_SLACK,
        }
    }

    /// Larger is closer to (or further into) violation.
    fn badness(self, v: f64) -> f64 {
        match self {
            Sign::Negative | Sign::NonPositive => v,
            Sign::Positive | Sign::NonNegative => -v,
        }
    }
}

/// How the t axis is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum TSampling {
    /// Uniform on `[min, max]`, endpoints included.
    Uniform { min: f64, max: f64 },
    /// `t = a + max_offset·((j+1)/n)²`: graded toward the diagonal, which is
    /// excluded (for expressions singular at t = a).
    AboveDiagonalOpen { max_offset: f64 },
    /// Uniform on `[a, a + max_offset]`, diagonal included.
    AboveDiagonalClosed { max_offset: f64 },
}

/// A rectangle in a (uniform, endpoints included) times a t-sampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub a_min: f64,
    pub a_max: f64,
    pub t: TSampling,
}

impl Region {
    fn a_at(&self, i: usize, n: usize) -> f64 {
        self.a_min + (self.a_max - self.a_min) * i as f64 / (n - 1) as f64
    }

    fn t_at(&self, a: f64, j: usize, n: usize) -> f64 {
        match self.t {
            TSampling::Uniform { min, max } => min + (max - min) * j as f64 / (n - 1) as f64,
            TSampling::AboveDiagonalOpen { max_offset } => {
                let g = (j + 1) as f64 / n as f64;
                a + max_offset * g * g
            }
            TSampling::AboveDiagonalClosed { max_offset } => a + max_offset * j as f64 / (n - 1) as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionVerdict {
    pub name: String,
    pub grid_size: usize,
    pub worst_value: f64,
    pub worst_point: (f64, f64),
    pub holds: bool,
    pub violations: usize,
    pub evaluation_failures: usize,
    /// Largest |analytic − finite difference| where a cross-check was run.
    pub fd_max_discrepancy: Option<f64>,
    pub note: String,
}

/// One grid evaluation: `(a, t, value or error message)`.
type Sample = (f64, f64, std::result::Result<f64, String>);

/// Samples `f` on a `grid_size × grid_size` grid over `region` and checks
/// the requested sign at every point. Evaluation failures make the verdict
/// fail and are counted; they do not abort the sweep.
pub fn verify_region<F>(name: &str, f: F, region: &Region, sign: Sign, grid_size: usize) -> Result<RegionVerdict>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    if grid_size < 100 {
        return Err(HypError::Resolution(format!(
            "lemma grids need at least 100 points per axis, got {grid_size}"
        )));
    }
    let n = grid_size;
    let rows: Vec<Vec<Sample>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = region.a_at(i, n);
            (0..n)
                .map(|j| {
                    let t = region.t_at(a, j, n);
                    (a, t, f(a, t).map_err(|e| e.to_string()))
                })
                .collect()
        })
        .collect();

    let mut worst_value = f64::NAN;
    let mut worst_point = (f64::NAN, f64::NAN);
    let mut worst_badness = f64::NEG_INFINITY;
    let mut violations = 0;
    let mut failures = 0;
    let mut first_failure = None;
    for (a, t, r) in rows.into_iter().flatten() {
        match r {
            Ok(v) => {
                if !sign.satisfied(v) {
                    violations += 1;
                }
                let b = sign.badness(v);
                if b > worst_badness {
                    worst_badness = b;
                    worst_value = v;
                    worst_point = (a, t);
                }
            }
            Err(e) => {
                failures += 1;
                first_failure.get_or_insert(format!("evaluation failed at ({a}, {t}): {e}"));
            }
        }
    }

    let mut note = format!(
        "{n}x{n} grid; a in [{}, {}]; {}; sampled evidence, not a proof",
        region.a_min,
        region.a_max,
        match region.t {
            TSampling::Uniform { min, max } => format!("t in [{min}, {max}]"),
            TSampling::AboveDiagonalOpen { max_offset } =>
                format!("t in (a, a+{max_offset}] graded toward t = a; tail beyond truncation governed by its dominant term"),
            TSampling::AboveDiagonalClosed { max_offset } =>
                format!("t in [a, a+{max_offset}]; tail beyond truncation governed by its dominant term"),
        }
    );
    if let Some(msg) = first_failure {
        note.push_str(&format!("; {failures} evaluation failures, first: {msg}"));
    }
    Ok(RegionVerdict {
        name: name.to_string(),
        grid_size: n,
        worst_value,
        worst_point,
        holds: violations == 0 && failures == 0,
        violations,
        evaluation_failures: failures,
        fd_max_discrepancy: None,
        note,
    })
}

/// Central-difference cross-check of an analytic a-derivative against
/// `source` on a coarse sub-grid of `region`, skipping points within
/// 0.1 of the diagonal where the derivatives blow up. Returns the largest
/// discrepancy, scaled by max(1, |analytic|).
fn fd_cross_check<A, S>(analytic: A, source: S, region: &Region, points: usize) -> Result<f64>
where
    A: Fn(f64, f64) -> Result<f64> + Sync,
    S: Fn(f64, f64) -> Result<f64> + Sync,
{
    let rows: Vec<Result<f64>> = (0..points)
        .into_par_iter()
        .map(|i| {
            let a = region.a_at(i, points);
            let mut worst: f64 = 0.0;
            for j in 0..points {
                let t = region.t_at(a, j, points);
                if t - a < FD_MIN_GAP || a - FD_STEP <= 0.0 {
                    continue;
                }
                let an = analytic(a, t)?;
                let fd = (source(a + FD_STEP, t)? - source(a - FD_STEP, t)?) / (2.0 * FD_STEP);
                worst = worst.max((an - fd).abs() / an.abs().max(1.0));
            }
            Ok(worst)
        })
        .collect();
    let mut worst: f64 = 0.0;
    for r in rows {
        worst = worst.max(r?);
    }
    Ok(worst)
}

fn rho_a_at(a: f64, t: f64) -> Result<f64> {
    rho_partial_a(CatenoidParam::new(a)?, t)
}

fn rho_aa_at(a: f64, t: f64) -> Result<f64> {
    rho_partial_aa(CatenoidParam::new(a)?, t)
}

fn rho_at(a: f64, t: f64) -> Result<f64> {
    rho(CatenoidParam::new(a)?, t)
}

pub fn phi_region() -> Region {
    let a3 = a3_const();
    Region {
        a_min: a3,
        a_max: a3 + 5.0,
        t: TSampling::Uniform { min: 0.0, max: 30.0 },
    }
}

pub fn psi_region() -> Region {
    Region {
        a_min: 1e-3,
        a_max: a4_const(),
        t: TSampling::Uniform { min: 1e-3, max: 30.0 },
    }
}

pub fn w_region() -> Region {
    Region {
        a_min: 1e-3,
        a_max: a3_const() + 5.0,
        t: TSampling::AboveDiagonalClosed { max_offset: T_TRUNCATION },
    }
}

/// Sampled R₃ = {t ≥ a ≥ A₃}.
pub fn r3_region() -> Region {
    let a3 = a3_const();
    Region {
        a_min: a3,
        a_max: a3 + 5.0,
        t: TSampling::AboveDiagonalOpen { max_offset: T_TRUNCATION },
    }
}

/// Sampled R₄ = {0 < a ≤ A₄, t ≥ a}.
pub fn r4_region() -> Region {
    Region {
        a_min: 0.01,
        a_max: a4_const(),
        t: TSampling::AboveDiagonalOpen { max_offset: T_TRUNCATION },
    }
}

pub fn verify_phi(grid: usize) -> Result<RegionVerdict> {
    verify_region("phi <= 0", |a, t| Ok(phi_fn(a, t)), &phi_region(), Sign::NonPositive, grid)
}

pub fn verify_psi(grid: usize) -> Result<RegionVerdict> {
    verify_region("psi < 0", |a, t| Ok(psi_fn(a, t)), &psi_region(), Sign::Negative, grid)
}

pub fn verify_w(grid: usize) -> Result<RegionVerdict> {
    verify_region(
        "w - sinh 6a >= 0",
        |a, t| Ok(w_fn(a, t) - (6.0 * a).sinh()),
        &w_region(),
        Sign::NonNegative,
        grid,
    )
}

pub fn verify_rho_a(grid: usize) -> Result<RegionVerdict> {
    let region = r3_region();
    let mut v = verify_region("d rho/da < 0 on R3", rho_a_at, &region, Sign::Negative, grid)?;
    attach_fd(&mut v, fd_cross_check(rho_a_at, rho_at, &region, 12));
    Ok(v)
}

pub fn verify_rho_aa(grid: usize) -> Result<RegionVerdict> {
    let region = r4_region();
    let mut v = verify_region("d2 rho/da2 < 0 on R4", rho_aa_at, &region, Sign::Negative, grid)?;
    attach_fd(&mut v, fd_cross_check(rho_aa_at, rho_a_at, &region, 12));
    Ok(v)
}

fn attach_fd(v: &mut RegionVerdict, fd: Result<f64>) {
    match fd {
        Ok(d) => {
            v.fd_max_discrepancy = Some(d);
            if d > FD_TOL {
                v.holds = false;
                v.note.push_str(&format!("; finite-difference cross-check failed ({d:e})"));
            } else {
                v.note.push_str(&format!("; finite-difference cross-check (step {FD_STEP}) agrees to {d:.1e}"));
            }
        }
        Err(e) => {
            v.holds = false;
            v.note.push_str(&format!("; finite-difference cross-check failed: {e}"));
        }
    }
}

/// All five lemma verdicts at the given grid size.
pub fn verify_all(grid: usize) -> Result<Vec<RegionVerdict>> {
    Ok(vec![
        verify_phi(grid)?,
        verify_psi(grid)?,
        verify_w(grid)?,
        verify_rho_a(grid)?,
        verify_rho_aa(grid)?,
    ])
}
