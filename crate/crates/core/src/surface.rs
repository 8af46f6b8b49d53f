//! Surface sampling and numerical differential geometry.
//!
//! Meshes are generated in the Poincaré ball and pushed to the other models
//! by the model isometries; normals are pushed forward with them and then
//! rescaled to Euclidean unit length. Fundamental forms and mean curvature
//! come from central differences of a chart under a conformal model metric
//! g = e^{2ω}δ, using H_g = e^{−ω}(H_δ − 2∂_n ω) with H = κ₁ + κ₂.

use std::f64::consts::{PI, SQRT_2};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::catenary::{x_of, x_s, y_of, y_s, CatenoidParam};
use crate::error::{HypError, Result};
use crate::helicoid::{helicoid_ball, HelicoidPitch};
use crate::models::{
    ball_to_hyperboloid, ball_to_upperhalf, halfdisk_from_warped, hyperboloid_to_ball, upperhalf_to_ball, BallPoint,
    LorentzVec, UpperHalfPoint, WarpedPoint,
};
use crate::quad::{gauss_kronrod15, integrate_smooth, Tolerance};

const MIN_STEP: f64 = 1e-5;
const MAX_STEP: f64 = 1e-2;
const MIN_AREA_ELEMENT: f64 = 1e-12;
const TANGENT_STEP: f64 = 1e-6;

/// Which model the coordinates of a mesh or chart refer to. Hyperboloid
/// coordinates are the spatial part (x2, x3, x4); x1 follows from ⟨x,x⟩ = −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Model {
    Ball,
    UpperHalf,
    Hyperboloid,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    pub normals: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub model: Model,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FundamentalForms {
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "G")]
    pub g: f64,
    #[serde(rename = "H")]
    pub h: f64,
    pub at: (f64, f64),
}

/// Generating curve types of catenoids in the hyperboloid model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CatenoidKind {
    Spherical { atilde: f64 },
    Hyperbolic { atilde: f64 },
    Parabolic,
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add_scaled(a: [f64; 3], b: [f64; 3], k: f64) -> [f64; 3] {
    [a[0] + k * b[0], a[1] + k * b[1], a[2] + k * b[2]]
}

fn scale(a: [f64; 3], k: f64) -> [f64; 3] {
    [a[0] * k, a[1] * k, a[2] * k]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(a: [f64; 3]) -> Result<[f64; 3]> {
    let n = dot(a, a).sqrt();
    if !(n > 0.0) || !n.is_finite() {
        return Err(HypError::Degenerate(format!("cannot normalize {a:?}")));
    }
    Ok(scale(a, 1.0 / n))
}

/// Conformal exponent ω and its Euclidean gradient at a point.
fn conformal_factor(model: Model, p: [f64; 3]) -> (f64, [f64; 3]) {
    match model {
        Model::Ball | Model::Hyperboloid => {
            let d = 1.0 - dot(p, p);
            ((2.0 / d).ln(), scale(p, 2.0 / d))
        }
        Model::UpperHalf => (-p[2].ln(), [0.0, 0.0, -1.0 / p[2]]),
    }
}

fn hyperboloid_spatial_to_ball(p: [f64; 3]) -> Result<[f64; 3]> {
    Ok(hyperboloid_to_ball(&LorentzVec::from_spatial(p[0], p[1], p[2]))?.as_array())
}

/// First fundamental form (E, F, G) under the model metric and the mean
/// curvature H of a chart at (p1, p2), by central differences with step h
/// (fourth order for first derivatives, second order for second).
/// Hyperboloid charts are evaluated through the ball model.
pub fn first_fundamental_form<C>(model: Model, chart: C, p1: f64, p2: f64, h: f64) -> Result<FundamentalForms>
where
    C: Fn(f64, f64) -> Result<[f64; 3]>,
{
    if !(MIN_STEP..=MAX_STEP).contains(&h) {
        return Err(HypError::domain(format!("difference step {h} outside [{MIN_STEP}, {MAX_STEP}]")));
    }
    let eval = |a: f64, b: f64| -> Result<[f64; 3]> {
        let p = chart(a, b)?;
        match model {
            Model::Hyperboloid => hyperboloid_spatial_to_ball(p),
            Model::Ball => Ok(BallPoint::new(p[0], p[1], p[2])?.as_array()),
            Model::UpperHalf => Ok(UpperHalfPoint::new(p[0], p[1], p[2])?.as_array()),
        }
    };
    let c = eval(p1, p2)?;
    let pu = eval(p1 + h, p2)?;
    let mu = eval(p1 - h, p2)?;
    let pv = eval(p1, p2 + h)?;
    let mv = eval(p1, p2 - h)?;
    let pp = eval(p1 + h, p2 + h)?;
    let pm = eval(p1 + h, p2 - h)?;
    let mp = eval(p1 - h, p2 + h)?;
    let mm = eval(p1 - h, p2 - h)?;

    // Fourth-order first derivatives keep E, F, G accurate well below h².
    let fourth_order = |p2h: [f64; 3], m2h: [f64; 3], ph: [f64; 3], mh: [f64; 3]| {
        scale(add_scaled(sub(scale(sub(ph, mh), 8.0), p2h), m2h, 1.0), 1.0 / (12.0 * h))
    };
    let xu = fourth_order(eval(p1 + 2.0 * h, p2)?, eval(p1 - 2.0 * h, p2)?, pu, mu);
    let xv = fourth_order(eval(p1, p2 + 2.0 * h)?, eval(p1, p2 - 2.0 * h)?, pv, mv);
    let xuu = scale(add_scaled(add_scaled(pu, c, -2.0), mu, 1.0), 1.0 / (h * h));
    let xvv = scale(add_scaled(add_scaled(pv, c, -2.0), mv, 1.0), 1.0 / (h * h));
    let xuv = scale(sub(sub(pp, pm), sub(mp, mm)), 0.25 / (h * h));

    let (ee, ff, gg) = (dot(xu, xu), dot(xu, xv), dot(xv, xv));
    let det = ee * gg - ff * ff;
    let n = normalize(cross(xu, xv))?;
    let (l, m, nn) = (dot(xuu, n), dot(xuv, n), dot(xvv, n));
    let h_flat = (l * gg - 2.0 * m * ff + nn * ee) / det;

    let metric_model = if model == Model::Hyperboloid { Model::Ball } else { model };
    let (omega, grad) = conformal_factor(metric_model, c);
    let lam2 = (2.0 * omega).exp();
    let forms = FundamentalForms {
        e: lam2 * ee,
        f: lam2 * ff,
        g: lam2 * gg,
        h: (-omega).exp() * (h_flat - 2.0 * dot(grad, n)),
        at: (p1, p2),
    };
    if !(forms.e * forms.g - forms.f * forms.f >= MIN_AREA_ELEMENT) {
        return Err(HypError::Degenerate(format!(
            "EG - F^2 = {:e} at ({p1}, {p2})",
            forms.e * forms.g - forms.f * forms.f
        )));
    }
    Ok(forms)
}

/// Mean curvature of a chart under the model metric.
pub fn mean_curvature_numeric<C>(model: Model, chart: C, p1: f64, p2: f64, h: f64) -> Result<f64>
where
    C: Fn(f64, f64) -> Result<[f64; 3]>,
{
    Ok(first_fundamental_form(model, chart, p1, p2, h)?.h)
}

/// Ball-model chart (s, θ) ↦ (u(s), v(s) cos θ, v(s) sin θ) of C_a near a
/// base arc length s0. The x coordinate is x(a, s0) plus a fixed 15-point
/// rule over [s0, s], so nearby evaluations differ smoothly, as finite
/// differences require.
#[derive(Debug, Clone, Copy)]
pub struct CatenoidChart {
    a: CatenoidParam,
    s0: f64,
    x0: f64,
}

impl CatenoidChart {
    pub fn new(a: CatenoidParam, s0: f64) -> Result<Self> {
        Ok(CatenoidChart { a, s0, x0: x_of(a, s0)? })
    }

    pub fn x_at(&self, s: f64) -> Result<f64> {
        let (dx, _) = gauss_kronrod15(|t| x_s(self.a, t), self.s0, s)?;
        Ok(self.x0 + dx)
    }

    pub fn ball(&self, s: f64, theta: f64) -> Result<[f64; 3]> {
        let w = WarpedPoint {
            x: self.x_at(s)?,
            y: y_of(self.a, s),
        };
        Ok(revolve(halfdisk_from_warped(&w), theta))
    }
}

fn revolve((u, v): (f64, f64), theta: f64) -> [f64; 3] {
    [u, v * theta.cos(), v * theta.sin()]
}

/// Unit normal (v_s, −u_s cos θ, −u_s sin θ)/‖·‖ of C_a at arc length s,
/// where (u, v) = halfdisk_from_warped(x, y); orientation Y_s × Y_θ.
fn catenoid_normal(a: CatenoidParam, x: f64, s: f64, theta: f64) -> Result<[f64; 3]> {
    let y = y_of(a, s);
    let (cx, sx, cy, sy) = (x.cosh(), x.sinh(), y.cosh(), y.sinh());
    let d = 1.0 + cx * cy;
    let d2 = d * d;
    let (xs, ys) = (x_s(a, s), y_s(a, s));
    let u_x = cy * (cx + cy) / d2;
    let u_y = sx * sy / d2;
    let v_x = -sx * sy * cy / d2;
    let v_y = (cx + cy) / d2;
    let us = u_x * xs + u_y * ys;
    let vs = v_x * xs + v_y * ys;
    normalize([vs, -us * theta.cos(), -us * theta.sin()])
}

struct Grid {
    rows: usize,
    cols: usize,
    wrap_cols: bool,
    points: Vec<[f64; 3]>,
    normals: Vec<[f64; 3]>,
}

fn check_counts(n1: usize, min1: usize, n2: usize, min2: usize) -> Result<()> {
    if n1 < min1 || n2 < min2 {
        return Err(HypError::Resolution(format!(
            "need at least {min1} x {min2} samples, got {n1} x {n2}"
        )));
    }
    Ok(())
}

fn check_range(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0) || !v.is_finite() {
        return Err(HypError::Resolution(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// x(a, s) at ascending sample points, accumulated piece by piece.
fn x_samples(a: CatenoidParam, s: &[f64]) -> Result<Vec<f64>> {
    let tol = Tolerance::default();
    let mut out = Vec::with_capacity(s.len());
    let mut prev_s = 0.0f64;
    let mut acc = 0.0;
    for &si in s {
        let (lo, hi) = (prev_s.min(si), prev_s.max(si));
        let piece = integrate_smooth(|t| x_s(a, t), lo, hi, &tol)?.value;
        acc += if si >= prev_s { piece } else { -piece };
        out.push(acc);
        prev_s = si;
    }
    Ok(out)
}

/// Ball-model mesh of C_a over s ∈ [−s_max, s_max], θ ∈ [0, 2π).
pub fn catenoid_mesh(a: CatenoidParam, s_max: f64, n_s: usize, n_theta: usize) -> Result<SurfaceMesh> {
    catenoid_mesh_in(a, Model::Ball, s_max, n_s, n_theta)
}

pub fn catenoid_mesh_in(a: CatenoidParam, model: Model, s_max: f64, n_s: usize, n_theta: usize) -> Result<SurfaceMesh> {
    check_range("s_max", s_max)?;
    check_counts(n_s, 2, n_theta, 3)?;
    // Exactly antisymmetric samples, so x can be mirrored.
    let m = (n_s - 1) as f64;
    let s: Vec<f64> = (0..n_s).map(|i| s_max * (2.0 * i as f64 - m) / m).collect();
    let first_nonneg = n_s / 2;
    let xs_pos = x_samples(a, &s[first_nonneg..])?;
    let x_full: Vec<f64> = (0..n_s)
        .map(|i| if i >= first_nonneg { xs_pos[i - first_nonneg] } else { -xs_pos[n_s - 1 - i - first_nonneg] })
        .collect();

    let thetas: Vec<f64> = (0..n_theta).map(|j| 2.0 * PI * j as f64 / n_theta as f64).collect();
    let mut points = Vec::with_capacity(n_s * n_theta);
    let mut normals = Vec::with_capacity(n_s * n_theta);
    for (i, &si) in s.iter().enumerate() {
        let w = WarpedPoint {
            x: x_full[i],
            y: y_of(a, si),
        };
        let uv = halfdisk_from_warped(&w);
        for &th in &thetas {
            let p = revolve(uv, th);
            BallPoint::new(p[0], p[1], p[2]).map_err(|_| {
                HypError::Resolution(format!("s_max = {s_max} reaches the sphere at infinity in double precision"))
            })?;
            points.push(p);
            normals.push(catenoid_normal(a, w.x, si, th)?);
        }
    }
    build_mesh(
        Grid {
            rows: n_s,
            cols: n_theta,
            wrap_cols: true,
            points,
            normals,
        },
        model,
    )
}

/// Mesh of H_ā over u ∈ [−u_max, u_max], v ∈ [−v_max, v_max].
pub fn helicoid_mesh(
    abar: HelicoidPitch,
    model: Model,
    u_max: f64,
    v_max: f64,
    n_u: usize,
    n_v: usize,
) -> Result<SurfaceMesh> {
    check_range("u_max", u_max)?;
    check_range("v_max", v_max)?;
    check_counts(n_u, 2, n_v, 2)?;
    let us = linspace(-u_max, u_max, n_u);
    let vs = linspace(-v_max, v_max, n_v);
    let mut points = Vec::with_capacity(n_u * n_v);
    let mut normals = Vec::with_capacity(n_u * n_v);
    let h = TANGENT_STEP;
    for &u in &us {
        for &v in &vs {
            let p = helicoid_ball(abar, u, v);
            BallPoint::new(p.u, p.v, p.w).map_err(|_| {
                HypError::Resolution(format!("range ({u_max}, {v_max}) reaches the sphere at infinity in double precision"))
            })?;
            let tu = sub(helicoid_ball(abar, u + h, v).as_array(), helicoid_ball(abar, u - h, v).as_array());
            let tv = sub(helicoid_ball(abar, u, v + h).as_array(), helicoid_ball(abar, u, v - h).as_array());
            points.push(p.as_array());
            normals.push(normalize(cross(tu, tv))?);
        }
    }
    build_mesh(
        Grid {
            rows: n_u,
            cols: n_v,
            wrap_cols: false,
            points,
            normals,
        },
        model,
    )
}

/// Maps a ball point into the target model's coordinates.
fn ball_into(model: Model, p: [f64; 3]) -> Result<[f64; 3]> {
    let b = BallPoint::new(p[0], p[1], p[2])?;
    match model {
        Model::Ball => Ok(p),
        Model::UpperHalf => Ok(ball_to_upperhalf(&b)?.as_array()),
        Model::Hyperboloid => {
            let h = ball_to_hyperboloid(&b)?;
            Ok([h.x2, h.x3, h.x4])
        }
    }
}

/// Pushes a ball tangent vector at `p` into the target model by a central
/// difference of the model isometry along it.
fn push_forward(model: Model, p: [f64; 3], n: [f64; 3]) -> Result<[f64; 3]> {
    if model == Model::Ball {
        return Ok(n);
    }
    let eps = 1e-6 * (1.0 - dot(p, p).sqrt());
    let fwd = ball_into(model, add_scaled(p, n, eps))?;
    let bwd = ball_into(model, add_scaled(p, n, -eps))?;
    normalize(sub(fwd, bwd))
}

fn build_mesh(grid: Grid, model: Model) -> Result<SurfaceMesh> {
    let mut vertices = Vec::with_capacity(grid.points.len());
    let mut normals = Vec::with_capacity(grid.points.len());
    for (p, n) in grid.points.iter().zip(&grid.normals) {
        vertices.push(ball_into(model, *p)?);
        normals.push(push_forward(model, *p, *n)?);
    }
    let idx = |i: usize, j: usize| i * grid.cols + (j % grid.cols);
    let col_limit = if grid.wrap_cols { grid.cols } else { grid.cols - 1 };
    let mut faces = Vec::with_capacity(2 * (grid.rows - 1) * col_limit);
    for i in 0..grid.rows - 1 {
        for j in 0..col_limit {
            let (a, b, c, d) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            let diag_ac = sub(vertices[c], vertices[a]);
            let diag_bd = sub(vertices[d], vertices[b]);
            // Both splits keep the (first, second) parameter orientation.
            if dot(diag_ac, diag_ac) <= dot(diag_bd, diag_bd) {
                faces.push([a, b, c]);
                faces.push([a, c, d]);
            } else {
                faces.push([a, b, d]);
                faces.push([b, c, d]);
            }
        }
    }
    Ok(SurfaceMesh {
        vertices,
        normals,
        faces,
        model,
    })
}

/// The point at arc length s on the generating curve of a catenoid in the
/// hyperboloid model, in standard coordinates (x1 timelike).
///
/// Basis identifications:
/// - spherical: e4 ↦ E1 (timelike), e1 ↦ E4, e2 ↦ E2, e3 ↦ E3;
/// - hyperbolic: e_k ↦ E_k;
/// - parabolic: e1 = (E1 + E3)/√2, e3 = (−E1 + E3)/√2, e2 = E2, e4 = E4.
///   This pair of null vectors has ⟨e1, e3⟩ = +1, the sign for which the
///   generating curve lies on ⟨x, x⟩ = −1 with x1 > 0.
pub fn lorentz_catenoid_curve(kind: CatenoidKind, s: f64) -> Result<LorentzVec> {
    lorentz_catenoid_surface(kind, s, 0.0)
}

/// The generating curve rotated by the one-parameter group fixing
/// span{e3, e4} pointwise: a rotation for spherical, a boost for hyperbolic
/// and a null rotation for parabolic catenoids.
pub fn lorentz_catenoid_surface(kind: CatenoidKind, s: f64, angle: f64) -> Result<LorentzVec> {
    let tol = Tolerance::default();
    let phi = |num: f64, sign: f64, atilde: f64| -> Result<f64> {
        let f = |sig: f64| {
            let c = atilde * (2.0 * sig).cosh();
            num / ((c + 0.5 * sign) * (c - 0.5 * sign).sqrt())
        };
        let r = integrate_smooth(f, 0.0, s.abs(), &tol)?;
        Ok(s.signum() * r.value)
    };
    match kind {
        CatenoidKind::Spherical { atilde } => {
            check_atilde(atilde)?;
            let x1 = (atilde * (2.0 * s).cosh() - 0.5).sqrt();
            let ph = phi((atilde * atilde - 0.25).sqrt(), 1.0, atilde)?;
            let r = (x1 * x1 + 1.0).sqrt();
            let (x3, x4) = (r * ph.sinh(), r * ph.cosh());
            Ok(LorentzVec::new(x4, x1 * angle.sin(), x3, x1 * angle.cos()))
        }
        CatenoidKind::Hyperbolic { atilde } => {
            check_atilde(atilde)?;
            let x1 = (atilde * (2.0 * s).cosh() + 0.5).sqrt();
            let ph = phi((atilde * atilde - 0.25).sqrt(), -1.0, atilde)?;
            let r = (x1 * x1 - 1.0).sqrt();
            let (x3, x4) = (r * ph.sin(), r * ph.cos());
            Ok(LorentzVec::new(x1 * angle.cosh(), x1 * angle.sinh(), x3, x4))
        }
        CatenoidKind::Parabolic => {
            let x1 = (2.0 * s).cosh().sqrt();
            let r = integrate_smooth(|sig| (2.0 * sig).cosh().powf(-1.5), 0.0, s.abs(), &tol)?;
            let x4 = x1 * s.signum() * r.value;
            let x3 = -(1.0 + x4 * x4) / (2.0 * x1);
            // Null rotation: e1 ↦ e1 + c e2 − (c²/2) e3, e2 ↦ e2 − c e3.
            let c = angle;
            let (y1, y2, y3) = (x1, c * x1, x3 - 0.5 * c * c * x1);
            Ok(LorentzVec::new((y1 - y3) / SQRT_2, y2, (y1 + y3) / SQRT_2, x4))
        }
    }
}

fn check_atilde(atilde: f64) -> Result<()> {
    if !(atilde > 0.5) || !atilde.is_finite() {
        return Err(HypError::domain(format!("catenoid parameter atilde must exceed 1/2, got {atilde}")));
    }
    Ok(())
}

fn f17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes `v`/`vn`/`f` records; faces are 1-indexed and reference the
/// normal with the same index as the vertex.
pub fn write_obj<W: Write>(mesh: &SurfaceMesh, mut w: W) -> std::io::Result<()> {
    writeln!(w, "# model: {:?}", mesh.model)?;
    for v in &mesh.vertices {
        writeln!(w, "v {} {} {}", f17(v[0]), f17(v[1]), f17(v[2]))?;
    }
    for n in &mesh.normals {
        writeln!(w, "vn {} {} {}", f17(n[0]), f17(n[1]), f17(n[2]))?;
    }
    for f in &mesh.faces {
        let (a, b, c) = (f[0] + 1, f[1] + 1, f[2] + 1);
        writeln!(w, "f {a}//{a} {b}//{b} {c}//{c}")?;
    }
    w.flush()
}

pub fn export_obj(mesh: &SurfaceMesh, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| HypError::io(path, e))?;
    write_obj(mesh, BufWriter::new(file)).map_err(|e| HypError::io(path, e))
}

/// Writes a header row and one record per sample, 17 significant digits.
pub fn write_csv<W: Write>(headers: &[&str], rows: &[Vec<f64>], w: W) -> std::result::Result<(), csv::Error> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(headers)?;
    for row in rows {
        wtr.write_record(row.iter().map(|&v| f17(v)))?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn export_csv(path: &Path, headers: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let file = File::create(path).map_err(|e| HypError::io(path, e))?;
    write_csv(headers, rows, BufWriter::new(file)).map_err(|e| HypError::Csv {
        path: path.to_path_buf(),
        source: e,
    })
}

/// Maps upper-half coordinates back to the ball; convenience for charts.
pub fn upper_to_ball_array(p: [f64; 3]) -> Result<[f64; 3]> {
    Ok(upperhalf_to_ball(&UpperHalfPoint::new(p[0], p[1], p[2])?)?.as_array())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helicoid::helicoid_upperhalf;
    use crate::models::{lorentz_inner, warped_from_halfdisk};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(a: f64) -> CatenoidParam {
        CatenoidParam::new(a).unwrap()
    }

    #[test]
    fn plane_and_sphere_controls() {
        let plane = |u: f64, v: f64| Ok([u, v, 0.0]);
        let f = first_fundamental_form(Model::Ball, plane, 0.3, -0.2, 1e-3).unwrap();
        assert!(f.h.abs() < 1e-6);
        let r = 0.4;
        let sphere = |th: f64, ph: f64| Ok([r * th.sin() * ph.cos(), r * th.sin() * ph.sin(), r * th.cos()]);
        let f = first_fundamental_form(Model::Ball, sphere, 1.0, 0.5, 1e-3).unwrap();
        let expected = -(1.0 + r * r) / r;
        assert!((f.h.abs() - expected.abs()).abs() < 1e-4, "{}", f.h);
    }

    #[test]
    fn step_and_degeneracy_checks() {
        let plane = |u: f64, v: f64| Ok([u, v, 0.0]);
        assert!(first_fundamental_form(Model::Ball, plane, 0.0, 0.0, 1e-6).is_err());
        let line = |u: f64, _v: f64| Ok([u, 0.0, 0.0]);
        assert!(first_fundamental_form(Model::Ball, line, 0.1, 0.0, 1e-3).is_err());
    }

    #[test]
    fn catenoid_minimality() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &a in &[0.3, 0.8, 1.5] {
            for _ in 0..10 {
                let s0 = rng.gen_range(-2.0..2.0);
                let th0 = rng.gen_range(0.0..2.0 * PI);
                let chart = CatenoidChart::new(p(a), s0).unwrap();
                let h = mean_curvature_numeric(Model::Ball, |s, t| chart.ball(s, t), s0, th0, 1e-3).unwrap();
                assert!(h.abs() < 1e-4, "a={a} s={s0}: H={h:e}");
            }
        }
    }

    #[test]
    fn helicoid_minimality_and_chart_isometry() {
        for &ab in &[0.5, 2.0] {
            let pitch = HelicoidPitch::new(ab).unwrap();
            for &(u, v) in &[(0.3, -0.4), (1.1, 0.7), (-0.8, 1.2)] {
                let ball = |u: f64, v: f64| Ok(helicoid_ball(pitch, u, v).as_array());
                let upper = |u: f64, v: f64| Ok(helicoid_upperhalf(pitch, u, v).as_array());
                let fb = first_fundamental_form(Model::Ball, ball, u, v, 1e-3).unwrap();
                let fu = first_fundamental_form(Model::UpperHalf, upper, u, v, 1e-3).unwrap();
                assert!(fb.h.abs() < 1e-4 && fu.h.abs() < 1e-4);
                assert!((fb.e - fu.e).abs() < 1e-6 && (fb.f - fu.f).abs() < 1e-6 && (fb.g - fu.g).abs() < 1e-6, "{fb:?} {fu:?}");
                // E = cosh²v·... the analytic metric is du² + (cosh²u + ā² sinh²u) dv²
                assert!((fb.e - 1.0).abs() < 1e-6 && fb.f.abs() < 1e-6);
                assert!((fb.g - (u.cosh().powi(2) + ab * ab * u.sinh().powi(2))).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn catenoid_mesh_shape() {
        let a = 0.7;
        let m = catenoid_mesh(p(a), 3.0, 21, 16).unwrap();
        assert_eq!(m.vertices.len(), 21 * 16);
        assert_eq!(m.faces.len(), 2 * 20 * 16);
        assert!(m.faces.iter().flatten().all(|&i| i < m.vertices.len()));
        // Middle row is the neck circle.
        let neck = m.vertices[10 * 16];
        assert!((dot(neck, neck).sqrt() - (a / 2.0f64).tanh()).abs() < 1e-12);
        let o = BallPoint::new(0.0, 0.0, 0.0).unwrap();
        let q = BallPoint::new(neck[0], neck[1], neck[2]).unwrap();
        assert!((crate::models::ball_distance(&o, &q) - a).abs() < 1e-12);
        for n in &m.normals {
            assert!((dot(*n, *n) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn catenoid_mesh_approaches_sphere() {
        let r_max = |s_max: f64| {
            let m = catenoid_mesh(p(0.5), s_max, 5, 4).unwrap();
            dot(m.vertices[0], m.vertices[0]).sqrt()
        };
        assert!(r_max(2.0) < r_max(5.0) && r_max(5.0) < r_max(10.0));
        assert!(r_max(10.0) > 0.999);
    }

    #[test]
    fn mesh_normals_orthogonal_to_tangents() {
        let a = p(0.8);
        let m = catenoid_mesh(a, 2.0, 9, 8).unwrap();
        let s = linspace(-2.0, 2.0, 9);
        for (i, &si) in s.iter().enumerate().skip(1).take(7) {
            let chart = CatenoidChart::new(a, si).unwrap();
            for j in 0..8 {
                let th = 2.0 * PI * j as f64 / 8.0;
                let h = 1e-5;
                let ts = sub(chart.ball(si + h, th).unwrap(), chart.ball(si - h, th).unwrap());
                let tt = sub(chart.ball(si, th + h).unwrap(), chart.ball(si, th - h).unwrap());
                let n = m.normals[i * 8 + j];
                assert!(dot(n, normalize(ts).unwrap()).abs() < 1e-6);
                assert!(dot(n, normalize(tt).unwrap()).abs() < 1e-6);
                assert!(dot(n, cross(ts, tt)) > 0.0);
            }
        }
    }

    #[test]
    fn helicoid_meshes() {
        let five = HelicoidPitch::new(5.0).unwrap();
        let m = helicoid_mesh(five, Model::Ball, 3.0, 3.0, 12, 12).unwrap();
        assert!(m.vertices.iter().all(|v| dot(*v, *v) < 1.0));
        let flat = helicoid_mesh(HelicoidPitch::new(0.0).unwrap(), Model::Ball, 2.0, 2.0, 6, 6).unwrap();
        assert!(flat.vertices.iter().all(|v| v[1] == 0.0));
        let up = helicoid_mesh(five, Model::UpperHalf, 2.0, 2.0, 8, 8).unwrap();
        assert!(up.vertices.iter().all(|v| v[2] > 0.0));
        let hy = helicoid_mesh(five, Model::Hyperboloid, 2.0, 2.0, 8, 8).unwrap();
        assert_eq!(hy.vertices.len(), 64);
        assert!(helicoid_mesh(five, Model::Ball, 2.0, 2.0, 1, 8).is_err());
        assert!(helicoid_mesh(five, Model::Ball, -1.0, 2.0, 4, 8).is_err());
    }

    #[test]
    fn mesh_counts_validated() {
        assert!(catenoid_mesh(p(0.5), 1.0, 1, 8).is_err());
        assert!(catenoid_mesh(p(0.5), 1.0, 4, 2).is_err());
        assert!(catenoid_mesh(p(0.5), 0.0, 4, 8).is_err());
        assert!(catenoid_mesh(p(0.5), 60.0, 4, 8).is_err());
    }

    #[test]
    fn lorentz_curves_on_hyperboloid() {
        for kind in [
            CatenoidKind::Spherical { atilde: 0.9 },
            CatenoidKind::Hyperbolic { atilde: 0.9 },
            CatenoidKind::Parabolic,
        ] {
            for &s in &[-1.5, 0.0, 0.4, 2.0] {
                for &ang in &[0.0, 0.7] {
                    let x = lorentz_catenoid_surface(kind, s, ang).unwrap();
                    assert!((lorentz_inner(&x, &x) + 1.0).abs() < 1e-10, "{kind:?} {s}");
                    assert!(x.x1 >= 1.0);
                }
            }
        }
        assert!(lorentz_catenoid_curve(CatenoidKind::Spherical { atilde: 0.5 }, 0.0).is_err());
    }

    #[test]
    fn lorentz_curve_initial_points() {
        let at = 1.3;
        let x = lorentz_catenoid_curve(CatenoidKind::Spherical { atilde: at }, 0.0).unwrap();
        let x1 = (at - 0.5f64).sqrt();
        assert!((x.x4 - x1).abs() < 1e-15 && x.x3 == 0.0);
        assert!((x.x1 - (x1 * x1 + 1.0).sqrt()).abs() < 1e-15);
        let par = lorentz_catenoid_curve(CatenoidKind::Parabolic, 0.0).unwrap();
        // x1 = 1, x3 = −1/2, x4 = 0 in the null basis.
        assert_eq!(par.x4, 0.0);
        assert!((par.x1 - 1.5 / SQRT_2).abs() < 1e-15 && (par.x3 - 0.5 / SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn spherical_curve_is_the_catenary() {
        for &a in &[0.3f64, 0.9] {
            let atilde = (2.0 * a).cosh() / 2.0;
            for &s in &[0.0, 0.5, 1.7, -2.2] {
                let x = lorentz_catenoid_curve(CatenoidKind::Spherical { atilde }, s).unwrap();
                let b = hyperboloid_to_ball(&x).unwrap();
                assert!(b.w.abs() < 1e-15);
                let w = warped_from_halfdisk(b.u, b.v).unwrap();
                assert!((w.x - x_of(p(a), s).unwrap()).abs() < 1e-8);
                assert!((w.y - y_of(p(a), s)).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn lorentz_surfaces_are_minimal() {
        for kind in [
            CatenoidKind::Spherical { atilde: 1.1 },
            CatenoidKind::Hyperbolic { atilde: 1.1 },
            CatenoidKind::Parabolic,
        ] {
            let chart = |s: f64, ang: f64| {
                let x = lorentz_catenoid_surface(kind, s, ang)?;
                Ok([x.x2, x.x3, x.x4])
            };
            for &(s, ang) in &[(0.3, 0.2), (-0.9, 1.0), (1.4, -0.5)] {
                let h = mean_curvature_numeric(Model::Hyperboloid, chart, s, ang, 1e-3).unwrap();
                assert!(h.abs() < 1e-4, "{kind:?} ({s},{ang}): {h:e}");
            }
        }
    }

    #[test]
    fn csv_and_obj_formats() {
        let mut buf = Vec::new();
        write_csv(&["a", "value"], &[vec![0.1, 1.0 / 3.0]], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("a,value"));
        let rec: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(rec[1], "3.3333333333333331e-1");
        assert_eq!(rec[1].parse::<f64>().unwrap(), 1.0 / 3.0);

        let mesh = SurfaceMesh {
            vertices: vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0], [0.0, 1.0, 0.0]],
            normals: vec![[0.0, 0.0, 1.0]; 4],
            faces: vec![[0, 1, 2], [0, 2, 3]],
            model: Model::Ball,
        };
        let mut buf = Vec::new();
        write_obj(&mesh, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("f 1//1 2//2 3//3"));
        assert_eq!(text.lines().filter(|l| l.starts_with("vn ")).count(), 4);
    }

    #[test]
    fn upper_chart_round_trip() {
        let q = upper_to_ball_array([0.0, 0.0, 1.0]).unwrap();
        assert!(dot(q, q) < 1e-30);
    }
}
