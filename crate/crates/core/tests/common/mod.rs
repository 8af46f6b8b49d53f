//! Brute-force oracles shared by the integration tests.
//!
//! These deliberately use the unshifted integrands evaluated directly,
//! without log-space assembly, so they share no code path with the library.

#![allow(dead_code)]

/// Cells used by the graded midpoint rule.
pub const ORACLE_CELLS: usize = 10_000_000;

/// Truncation length for semi-infinite integrals whose integrands decay at
/// least like e^{-τ}.
pub const TAIL_LENGTH: f64 = 40.0;

/// Midpoint rule on `cells` cells of the mesh τ = (hi−lo)·u², which absorbs
/// an inverse square-root singularity at `lo`. The integrand receives the
/// offset τ from `lo` rather than lo + τ, so differences against the
/// singular endpoint keep full relative precision in the smallest cells.
pub fn graded_midpoint<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cells: usize) -> f64 {
    let width = hi - lo;
    let h = 1.0 / cells as f64;
    // Neumaier summation keeps round-off below the discretization error.
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for k in 0..cells {
        let u = (k as f64 + 0.5) * h;
        let term = f(width * u * u) * 2.0 * u * width * h;
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Plain midpoint rule on a uniform mesh, for smooth integrands.
pub fn uniform_midpoint<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, cells: usize) -> f64 {
    let h = (hi - lo) / cells as f64;
    (0..cells).map(|k| f(lo + (k as f64 + 0.5) * h)).sum::<f64>() * h
}

/// sinh²2t − sinh²2a = sinh(2t+2a)·sinh(2t−2a), at t = a + τ.
fn sinh_sq_gap(a: f64, tau: f64) -> f64 {
    (4.0 * a + 2.0 * tau).sinh() * (2.0 * tau).sinh()
}

/// sinh 2a / (cosh t · √(sinh²2t − sinh²2a)), the profile integrand, at t = a + τ.
pub fn profile(a: f64, tau: f64) -> f64 {
    (2.0 * a).sinh() / ((a + tau).cosh() * sinh_sq_gap(a, tau).sqrt())
}

pub fn rho_oracle(a: f64, t: f64) -> f64 {
    graded_midpoint(|tau| profile(a, tau), a, t, ORACLE_CELLS)
}

pub fn varrho_oracle(a: f64) -> f64 {
    rho_oracle(a, a + TAIL_LENGTH)
}

/// Arc length from the neck: ∫_a^t sinh 2y / √(sinh²2y − sinh²2a) dy.
pub fn arclength_oracle(a: f64, t: f64) -> f64 {
    graded_midpoint(
        |tau| (2.0 * (a + tau)).sinh() / sinh_sq_gap(a, tau).sqrt(),
        a,
        t,
        ORACLE_CELLS,
    )
}

/// y(a,s) = a + ∫₀^s ∂y/∂s.
pub fn y_oracle(a: f64, s: f64) -> f64 {
    let ys = |u: f64| {
        let x = (2.0 * a).cosh() * (2.0 * u).cosh();
        (2.0 * a).cosh() * (2.0 * u).sinh() / (x * x - 1.0).sqrt()
    };
    a + uniform_midpoint(ys, 0.0, s, ORACLE_CELLS)
}

/// x(a,s) = √2 sinh 2a ∫₀^s dσ / (√(X−1)(X+1)), X = cosh 2a cosh 2σ.
pub fn x_oracle(a: f64, s: f64) -> f64 {
    let g = |u: f64| {
        let x = (2.0 * a).cosh() * (2.0 * u).cosh();
        1.0 / ((x - 1.0).sqrt() * (x + 1.0))
    };
    std::f64::consts::SQRT_2 * (2.0 * a).sinh() * uniform_midpoint(g, 0.0, s, ORACLE_CELLS)
}

/// f(a) = ∫_a^∞ sinh t (sinh 2t / √(sinh²2t − sinh²2a) − 1) dt.
///
/// The direct bracket cancels to rounding noise for large t, where sinh t
/// would amplify it, so the mesh stops at a + 14; the integrand decays like
/// e^{−3t} and the neglected tail is below 1e-17 for a ≤ 2.
pub fn deficit_oracle(a: f64) -> f64 {
    let g = |tau: f64| {
        let t = a + tau;
        t.sinh() * ((2.0 * t).sinh() / sinh_sq_gap(a, tau).sqrt() - 1.0)
    };
    graded_midpoint(g, a, a + 14.0, ORACLE_CELLS)
}

/// 4π ∫_a^{y1} sinh t · sinh 2t / √(sinh²2t − sinh²2a) dt.
pub fn band_oracle(a: f64, y1: f64) -> f64 {
    let g = |tau: f64| {
        let t = a + tau;
        t.sinh() * (2.0 * t).sinh() / sinh_sq_gap(a, tau).sqrt()
    };
    4.0 * std::f64::consts::PI * graded_midpoint(g, a, y1, ORACLE_CELLS)
}

/// K = ∫₀¹ x⁻²(1/√(1−x⁴) − 1) dx, meshed from the singular end x = 1.
pub fn k_oracle() -> f64 {
    let g = |d: f64| {
        let x = 1.0 - d;
        if x < 1e-4 {
            // Series x²/2 + 3x⁶/8 avoids cancellation near 0.
            return 0.5 * x * x + 0.375 * x.powi(6);
        }
        // 1 − x⁴ = d(2 − d)(1 + x²) with d = 1 − x.
        (1.0 / (d * (2.0 - d) * (1.0 + x * x)).sqrt() - 1.0) / (x * x)
    };
    graded_midpoint(g, 0.0, 1.0, ORACLE_CELLS)
}

/// I(a,t) = n(A,T)/d(A,T), A = cosh 2a, T = cosh 2t.
pub fn i_direct(a: f64, t: f64) -> f64 {
    let big_a = (2.0 * a).cosh();
    let big_t = (2.0 * t).cosh();
    let n = big_a * (3.0 - big_a * big_a) * big_t * big_t + (big_a * big_a - 1.0) * big_t - 2.0 * big_a;
    let d = (big_a * big_t + 1.0).powi(2) * (big_a * big_t - 1.0).powf(1.5);
    n / d
}

pub fn i_integral_oracle(a: f64, upper: f64) -> f64 {
    uniform_midpoint(|t| i_direct(a, t), 0.0, upper, ORACLE_CELLS)
}

/// ∫₀¹ cos x / √x dx.
pub fn cos_over_sqrt_oracle() -> f64 {
    graded_midpoint(|x| x.cos() / x.sqrt(), 0.0, 1.0, ORACLE_CELLS)
}

/// Central difference of `f` at `x` with step `h`.
pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}
