//! Adaptive Gauss–Kronrod quadrature for the three integral shapes that
//! appear throughout the crate: smooth finite intervals, inverse square-root
//! blowup at the lower endpoint, and exponentially decaying tails on
//! `[lo, ∞)`.
//!
//! One adaptive kernel (7-point Gauss / 15-point Kronrod with a global
//! worst-interval-first queue) serves every shape; singular and unbounded
//! cases are reduced to it by substitution.

use std::cell::Cell;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering as AtomicOrdering};

use thiserror::Error;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Evaluations consumed by one application of the 15-point rule.
pub const RULE_EVALS: usize = 15;

const DEFAULT_ABS_TOL: f64 = 1e-10;
const DEFAULT_REL_TOL: f64 = 1e-10;
const DEFAULT_MAX_EVALS: usize = 1_000_000;

static DEFAULT_ABS_BITS: AtomicU64 = AtomicU64::new(0);
static DEFAULT_REL_BITS: AtomicU64 = AtomicU64::new(0);
static DEFAULT_EVALS: AtomicUsize = AtomicUsize::new(0);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("evaluation budget exhausted after {evals} evaluations (value {value:e}, error estimate {err_estimate:e})")]
    BudgetExhausted {
        value: f64,
        err_estimate: f64,
        evals: usize,
    },

    #[error("integral appears divergent after {evals} evaluations (last value {value:e})")]
    Divergent { value: f64, evals: usize },

    #[error("integrand returned a non-finite value at {at}")]
    NonFinite { at: f64 },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("invalid interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },
}

/// Value, error estimate and evaluation count of a quadrature call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_estimate: f64,
    pub evals: usize,
}

impl QuadResult {
    fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            evals: self.evals + other.evals,
        }
    }
}

/// Accuracy target: stop once the error estimate is below
/// `max(abs_tol, rel_tol·|value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_evals: usize) -> Result<Self, QuadError> {
        let tol = Tolerance {
            abs_tol,
            rel_tol,
            max_evals,
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<(), QuadError> {
        let in_unit = |x: f64| x > 0.0 && x < 1.0;
        if !in_unit(self.abs_tol) {
            return Err(QuadError::InvalidTolerance(format!(
                "abs_tol {} outside (0, 1)",
                self.abs_tol
            )));
        }
        if !in_unit(self.rel_tol) {
            return Err(QuadError::InvalidTolerance(format!(
                "rel_tol {} outside (0, 1)",
                self.rel_tol
            )));
        }
        if self.max_evals < 100 {
            return Err(QuadError::InvalidTolerance(format!(
                "max_evals {} below 100",
                self.max_evals
            )));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for Tolerance {
    /// The process-wide default: 1e-10 absolute and relative, 10⁶ evaluations,
    /// unless replaced with [`set_default_tolerance`].
    fn default() -> Self {
        let abs = DEFAULT_ABS_BITS.load(AtomicOrdering::Relaxed);
        let rel = DEFAULT_REL_BITS.load(AtomicOrdering::Relaxed);
        let evals = DEFAULT_EVALS.load(AtomicOrdering::Relaxed);
        Tolerance {
            abs_tol: if abs == 0 { DEFAULT_ABS_TOL } else { f64::from_bits(abs) },
            rel_tol: if rel == 0 { DEFAULT_REL_TOL } else { f64::from_bits(rel) },
            max_evals: if evals == 0 { DEFAULT_MAX_EVALS } else { evals },
        }
    }
}

/// Replaces the tolerance returned by `Tolerance::default()` for the whole
/// process. Used by the command-line front end for its override flags.
pub fn set_default_tolerance(tol: Tolerance) -> Result<(), QuadError> {
    tol.validate()?;
    DEFAULT_ABS_BITS.store(tol.abs_tol.to_bits(), AtomicOrdering::Relaxed);
    DEFAULT_REL_BITS.store(tol.rel_tol.to_bits(), AtomicOrdering::Relaxed);
    DEFAULT_EVALS.store(tol.max_evals, AtomicOrdering::Relaxed);
    Ok(())
}

/// Restores the built-in default tolerance.
pub fn reset_default_tolerance() {
    DEFAULT_ABS_BITS.store(0, AtomicOrdering::Relaxed);
    DEFAULT_REL_BITS.store(0, AtomicOrdering::Relaxed);
    DEFAULT_EVALS.store(0, AtomicOrdering::Relaxed);
}

struct Rule {
    value: f64,
    err: f64,
}

fn kronrod15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Rule, QuadError> {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64, QuadError> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadError::NonFinite { at: x })
        }
    };

    let fc = eval(centr)?;
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let absc = hlgth * XGK[j];
        let f1 = eval(centr - absc)?;
        let f2 = eval(centr + absc)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let dhlgth = hlgth.abs();
    let value = resk * hlgth;
    resabs *= dhlgth;
    resasc *= dhlgth;
    let mut err = ((resk - resg) * hlgth).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    Ok(Rule { value, err })
}

/// A single non-adaptive 15-point Gauss–Kronrod application on `[a, b]`.
/// Returns `(value, error estimate)`; useful for small local increments where
/// a smooth dependence on the endpoints matters more than adaptivity.
pub fn gauss_kronrod15<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<(f64, f64), QuadError> {
    let r = kronrod15(&f, a, b)?;
    Ok((r.value, r.err))
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .total_cmp(&other.err)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

const INITIAL_PIECES: usize = 4;
const CHECKPOINT_FIRST: usize = 2_000;

fn adaptive<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: &Tolerance) -> Result<QuadResult, QuadError> {
    tol.validate()?;
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(QuadError::InvalidInterval { lo, hi });
    }
    if lo == hi {
        return Ok(QuadResult {
            value: 0.0,
            err_estimate: 0.0,
            evals: 1,
        });
    }

    let mut heap = BinaryHeap::new();
    let mut settled: Vec<Segment> = Vec::new();
    let mut evals = 0usize;
    let width = (hi - lo) / INITIAL_PIECES as f64;
    for k in 0..INITIAL_PIECES {
        let a = lo + width * k as f64;
        let b = if k + 1 == INITIAL_PIECES { hi } else { a + width };
        let r = kronrod15(f, a, b)?;
        evals += RULE_EVALS;
        heap.push(Segment {
            a,
            b,
            value: r.value,
            err: r.err,
        });
    }

    let exact_sums = |heap: &BinaryHeap<Segment>, settled: &[Segment]| {
        let mut v = 0.0;
        let mut e = 0.0;
        for s in heap.iter().chain(settled.iter()) {
            v += s.value;
            e += s.err;
        }
        (v, e)
    };

    let (mut total, mut total_err) = exact_sums(&heap, &settled);
    let mut best = (total, total_err);
    let mut checkpoints: Vec<f64> = Vec::new();
    let mut next_checkpoint = CHECKPOINT_FIRST;
    let mut iterations = 0usize;

    loop {
        if total_err <= tol.target(total) {
            break;
        }
        if evals + 2 * RULE_EVALS > tol.max_evals {
            let (v, e) = best;
            if diverging(&checkpoints) {
                return Err(QuadError::Divergent { value: total, evals });
            }
            if e <= tol.target(v) {
                break;
            }
            return Err(QuadError::BudgetExhausted {
                value: v,
                err_estimate: e,
                evals,
            });
        }
        let Some(seg) = heap.pop() else { break };
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Interval too narrow to split in floating point.
            settled.push(seg);
            continue;
        }
        let left = kronrod15(f, seg.a, mid)?;
        let right = kronrod15(f, mid, seg.b)?;
        evals += 2 * RULE_EVALS;
        total += left.value + right.value - seg.value;
        total_err += left.err + right.err - seg.err;
        heap.push(Segment {
            a: seg.a,
            b: mid,
            value: left.value,
            err: left.err,
        });
        heap.push(Segment {
            a: mid,
            b: seg.b,
            value: right.value,
            err: right.err,
        });

        iterations += 1;
        if iterations.is_multiple_of(64) {
            let (v, e) = exact_sums(&heap, &settled);
            total = v;
            total_err = e;
        }
        if total_err < best.1 {
            best = (total, total_err);
        }
        if evals >= next_checkpoint {
            checkpoints.push(total);
            next_checkpoint *= 2;
        }
    }

    let (v, e) = exact_sums(&heap, &settled);
    if e < best.1 {
        best = (v, e);
    }
    Ok(QuadResult {
        value: best.0,
        err_estimate: best.1,
        evals,
    })
}

/// Growth of |value| across the last refinement checkpoints, each step
/// adding at least a fixed fraction, signals a divergent integral.
fn diverging(checkpoints: &[f64]) -> bool {
    if checkpoints.len() < 4 {
        return false;
    }
    let tail = &checkpoints[checkpoints.len() - 4..];
    tail.windows(2)
        .all(|w| w[1].abs() > w[0].abs() * (1.0 + 1e-6) + 1e-12)
}

/// ∫_lo^hi f for an integrand finite on the closed interval.
pub fn integrate_smooth<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: &Tolerance) -> Result<QuadResult, QuadError> {
    adaptive(&f, lo, hi, tol)
}

/// ∫_lo^hi f where f may blow up like (τ − lo)^(−1/2) at the lower endpoint.
/// Uses τ = lo + u², dτ = 2u du.
pub fn integrate_sqrt_singular_lo<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    tol: &Tolerance,
) -> Result<QuadResult, QuadError> {
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(QuadError::InvalidInterval { lo, hi });
    }
    let g = |u: f64| {
        if u == 0.0 {
            return 0.0;
        }
        2.0 * u * f(lo + u * u)
    };
    adaptive(&g, 0.0, (hi - lo).sqrt(), tol)
}

/// ∫_lo^∞ f for an exponentially decaying, smooth integrand. Uses
/// t = lo − ln x, mapping the half-line onto (0, 1].
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(f: F, lo: f64, tol: &Tolerance) -> Result<QuadResult, QuadError> {
    if !lo.is_finite() {
        return Err(QuadError::InvalidInterval { lo, hi: f64::INFINITY });
    }
    // y/x overflowing at tiny x while y is finite means f decays too slowly
    // for the integral to exist.
    let calls = Cell::new(0usize);
    let overflowed = Cell::new(false);
    let g = |x: f64| {
        calls.set(calls.get() + 1);
        if x <= 0.0 {
            return 0.0;
        }
        let y = f(lo - x.ln());
        if y == 0.0 {
            return 0.0;
        }
        let q = y / x;
        if y.is_finite() && !q.is_finite() {
            overflowed.set(true);
        }
        q
    };
    match adaptive(&g, 0.0, 1.0, tol) {
        Err(QuadError::NonFinite { .. }) if overflowed.get() => Err(QuadError::Divergent {
            value: f64::INFINITY,
            evals: calls.get(),
        }),
        other => other,
    }
}

/// ∫_lo^∞ f with an inverse square-root singularity at `lo` and an
/// exponentially decaying tail: the singular piece `[lo, lo+1]` and the
/// tail are integrated separately and summed.
pub fn integrate_semi_infinite_sqrt_singular<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    tol: &Tolerance,
) -> Result<QuadResult, QuadError> {
    let head = integrate_sqrt_singular_lo(&f, lo, lo + 1.0, tol)?;
    let tail = integrate_semi_infinite(&f, lo + 1.0, tol)?;
    Ok(head.combine(tail))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn tol() -> Tolerance {
        Tolerance::new(1e-12, 1e-12, 1_000_000).unwrap()
    }

    #[test]
    fn smooth_examples() {
        let one = integrate_smooth(|_| 1.0, 0.0, 1.0, &tol()).unwrap();
        assert!((one.value - 1.0).abs() < 1e-14);
        let s = integrate_smooth(f64::sin, 0.0, PI, &tol()).unwrap();
        assert!((s.value - 2.0).abs() < 1e-13);
        let c = integrate_smooth(|x| x * x * x, 0.0, 1.0, &tol()).unwrap();
        assert!((c.value - 0.25).abs() < 1e-14);
        assert!(s.err_estimate >= 0.0 && s.evals > 0);
    }

    #[test]
    fn empty_interval_is_zero() {
        let r = integrate_smooth(|x| x, 2.0, 2.0, &tol()).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(r.evals > 0);
    }

    #[test]
    fn reversed_interval_rejected() {
        assert!(matches!(
            integrate_smooth(|x| x, 1.0, 0.0, &tol()),
            Err(QuadError::InvalidInterval { .. })
        ));
    }

    #[test]
    fn inverse_sqrt_is_exact() {
        let r = integrate_sqrt_singular_lo(|x| 1.0 / x.sqrt(), 0.0, 1.0, &tol()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13);
    }

    #[test]
    fn semi_infinite_examples() {
        let e = integrate_semi_infinite(|t| (-t).exp(), 0.0, &tol()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);
        let q = integrate_semi_infinite_sqrt_singular(
            |t| (-2.0 * t).exp() / (-(-4.0 * t).exp_m1()).sqrt(),
            0.0,
            &tol(),
        )
        .unwrap();
        assert!((q.value - PI / 4.0).abs() < 1e-11);
    }

    #[test]
    fn nan_is_reported() {
        let r = integrate_smooth(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &tol());
        assert!(matches!(r, Err(QuadError::NonFinite { .. })));
    }

    #[test]
    fn divergence_detected() {
        let t = Tolerance::new(1e-12, 1e-12, 200_000).unwrap();
        let r = integrate_semi_infinite(|t| 1.0 / (1.0 + t), 0.0, &t);
        assert!(matches!(r, Err(QuadError::Divergent { .. })), "{r:?}");
    }

    #[test]
    fn budget_exhaustion_reported() {
        let t = Tolerance::new(1e-15, 1e-15, 100).unwrap();
        let r = integrate_smooth(|x| (50.0 * x).sin() * (x * 30.0).exp(), 0.0, 1.0, &t);
        assert!(matches!(r, Err(QuadError::BudgetExhausted { .. })), "{r:?}");
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 1e-3, 1000).is_err());
        assert!(Tolerance::new(1e-3, 1.0, 1000).is_err());
        assert!(Tolerance::new(1e-3, 1e-3, 99).is_err());
        assert!(Tolerance::new(1e-3, 1e-3, 100).is_ok());
    }

    #[test]
    fn tightening_never_increases_error_estimate() {
        let f = |x: f64| (3.0 * x).cos() / (1.0 + x * x);
        let mut prev = f64::INFINITY;
        for k in 3..13 {
            let t = 10f64.powi(-k);
            let r = integrate_smooth(f, 0.0, 10.0, &Tolerance::new(t, t, 1_000_000).unwrap()).unwrap();
            assert!(r.err_estimate <= prev);
            prev = r.err_estimate;
        }
    }

    #[test]
    fn fixed_rule_on_polynomial() {
        let (v, _) = gauss_kronrod15(|x| x.powi(20), 0.0, 1.0).unwrap();
        assert!((v - 1.0 / 21.0).abs() < 1e-15);
    }
}
