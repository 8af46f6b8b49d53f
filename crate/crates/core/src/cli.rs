//! Command-line front end.
//!
//! Scalars are written as JSON rounded to 12 significant digits, curves as
//! CSV with 17 significant digits and meshes as OBJ. Exit status is 0 on
//! success, 2 for usage and out-of-domain parameters, 1 for computation or
//! I/O failures.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::catenary::{catenary_point, varrho, varrho_prime, varrho_second, CatenoidParam};
use crate::error::{HypError, Result};
use crate::helicoid::{classify_helicoid, critical_pitch, HelicoidPitch};
use crate::jacobi::{classify_catenoid, envelope_point, find_a_c, find_z, intersect_catenaries, xi, zeta};
use crate::leastarea::{a_l_const, compare_areas, k_const, oliveira_soret_delta};
use crate::lemmas::{a3_const, a4_const, verify_all};
use crate::quad::{set_default_tolerance, Tolerance};
use crate::surface::{catenoid_mesh_in, helicoid_mesh, write_csv, write_obj, Model};

#[derive(Debug, Parser)]
#[command(name = "hypcat", version, about = "Minimal catenoids and helicoids in hyperbolic 3-space")]
#[command(allow_negative_numbers = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Write output to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    /// Expected output format; rejected if the subcommand produces another.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Absolute quadrature tolerance.
    #[arg(long, global = true)]
    pub abs_tol: Option<f64>,

    /// Relative quadrature tolerance.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,

    /// Quadrature evaluation budget per integral.
    #[arg(long, global = true, env = "HYPCAT_MAX_EVALS")]
    pub max_evals: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Obj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceArg {
    Catenoid,
    Helicoid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Ball,
    Upper,
    Hyperboloid,
}

impl From<ModelArg> for Model {
    fn from(m: ModelArg) -> Model {
        match m {
            ModelArg::Ball => Model::Ball,
            ModelArg::Upper => Model::UpperHalf,
            ModelArg::Hyperboloid => Model::Hyperboloid,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every named constant with its reference value.
    Constants {
        /// Accepted for symmetry; the output is always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Stability class of the spherical catenoid C_a.
    ClassifyCatenoid {
        #[arg(long)]
        a: f64,
    },
    /// Stability class of the helicoid with the given pitch.
    ClassifyHelicoid {
        #[arg(long)]
        pitch: f64,
    },
    /// ϱ(a) or one of its first two derivatives on a uniform grid.
    RhoCurve {
        #[arg(long)]
        a_min: f64,
        #[arg(long)]
        a_max: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=2))]
        derivative: u8,
    },
    /// Points (s, x, y, sin θ) of the generating catenary σ_a.
    CatenaryCurve {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        s_max: f64,
        #[arg(long)]
        samples: usize,
    },
    /// The Jacobi fields ζ and ξ along σ_a; z(a) in a `#` footer when unstable.
    JacobiProfile {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        s_max: f64,
        #[arg(long)]
        samples: usize,
    },
    /// Points where unstable catenaries touch their envelope.
    Envelope {
        #[arg(long)]
        a_min: f64,
        #[arg(long)]
        a_max: f64,
        #[arg(long)]
        samples: usize,
    },
    /// Intersection of the catenaries σ_{a1} and σ_{a2}.
    Intersect {
        #[arg(long)]
        a1: f64,
        #[arg(long)]
        a2: f64,
    },
    /// Catenoid band area against the two spanning disks.
    Area {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        y1: f64,
    },
    /// OBJ mesh of a catenoid or helicoid.
    Mesh {
        #[arg(long, value_enum)]
        surface: SurfaceArg,
        #[arg(long, value_enum, default_value = "ball")]
        model: ModelArg,
        /// Neck parameter a (catenoid) or pitch ā (helicoid).
        #[arg(long)]
        param: f64,
        /// Arc length range s_max (catenoid) or u_max (helicoid).
        #[arg(long, default_value_t = 3.0)]
        range1: f64,
        /// v_max (helicoid only).
        #[arg(long, default_value_t = 3.0)]
        range2: f64,
        /// Samples along s (catenoid) or u (helicoid).
        #[arg(long, default_value_t = 64)]
        n1: usize,
        /// Samples along the angle (catenoid) or v (helicoid).
        #[arg(long, default_value_t = 32)]
        n2: usize,
    },
    /// Grid verdicts for the sign lemmas.
    LemmasVerify {
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
}

impl Command {
    fn format(&self) -> Format {
        match self {
            Command::RhoCurve { .. }
            | Command::CatenaryCurve { .. }
            | Command::JacobiProfile { .. }
            | Command::Envelope { .. } => Format::Csv,
            Command::Mesh { .. } => Format::Obj,
            _ => Format::Json,
        }
    }
}

/// Exit status for an error: parameter problems are usage errors.
pub fn exit_code(err: &HypError) -> i32 {
    match err {
        HypError::Domain(_) | HypError::Resolution(_) => 2,
        _ => 1,
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("hypcat: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let g = &cli.global;
    if let Some(f) = g.format {
        let native = cli.command.format();
        if f != native {
            return Err(HypError::Domain(format!("this subcommand writes {native:?}, not {f:?}")));
        }
    }
    if g.abs_tol.is_some() || g.rel_tol.is_some() || g.max_evals.is_some() {
        let d = Tolerance::default();
        let tol = Tolerance::new(
            g.abs_tol.unwrap_or(d.abs_tol),
            g.rel_tol.unwrap_or(d.rel_tol),
            g.max_evals.unwrap_or(d.max_evals),
        )
        .map_err(|e| HypError::Domain(e.to_string()))?;
        set_default_tolerance(tol).map_err(|e| HypError::Domain(e.to_string()))?;
    }
    let bytes = render(&cli.command)?;
    match &g.output {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| HypError::Io {
            path: path.clone(),
            source: e,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|e| HypError::Io {
                    path: PathBuf::from("<stdout>"),
                    source: e,
                })
        }
    }
}

fn param(a: f64) -> Result<CatenoidParam> {
    CatenoidParam::new(a)
}

fn grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(HypError::Resolution(format!("need at least 2 samples, got {n}")));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(HypError::domain(format!("empty range [{lo}, {hi}]")));
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

fn sym_grid(half: f64, n: usize) -> Result<Vec<f64>> {
    if !(half > 0.0) {
        return Err(HypError::domain(format!("range must be positive, got {half}")));
    }
    grid(-half, half, n)
}

/// Rounds every float in a JSON tree to 12 significant digits.
fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap_or(f64::NAN);
            let r: f64 = format!("{x:.11e}").parse().unwrap_or(x);
            json!(r)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(v: &T, paper_ref: &str) -> Result<Vec<u8>> {
    let mut value = serde_json::to_value(v).map_err(|e| HypError::Degenerate(e.to_string()))?;
    if let Value::Object(m) = &mut value {
        m.insert("paper_ref".into(), json!(paper_ref));
    }
    let mut s = serde_json::to_string_pretty(&round_json(value)).map_err(|e| HypError::Degenerate(e.to_string()))?;
    s.push('\n');
    Ok(s.into_bytes())
}

fn to_csv(headers: &[&str], rows: &[Vec<f64>]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(headers, rows, &mut buf).map_err(|e| HypError::Csv {
        path: PathBuf::from("<buffer>"),
        source: e,
    })?;
    Ok(buf)
}

#[derive(Serialize)]
struct NamedConstant {
    name: &'static str,
    value: f64,
    reference: f64,
    paper_ref: &'static str,
}

fn constants() -> Result<Vec<NamedConstant>> {
    let a_c = find_a_c()?;
    let rho_c = varrho(param(a_c)?)?;
    let a_l = a_l_const()?;
    let c = |name, value, reference, paper_ref| NamedConstant {
        name,
        value,
        reference,
        paper_ref,
    };
    Ok(vec![
        c("a_c", a_c, 0.49577, "critical neck size: unique zero of the Gomes function derivative"),
        c("varrho_a_c", rho_c, 0.501143, "maximum of the Gomes function"),
        c("two_varrho_a_c", 2.0 * rho_c, 1.00229, "largest boundary-plane distance spanned by a catenoid"),
        c("K", k_const()?, 0.40093, "least-area constant: integral of x^-2 (1/sqrt(1-x^4) - 1)"),
        c("a_l", a_l, 1.10055, "least-area threshold acosh(1/(1-K))"),
        c("two_varrho_a_l", 2.0 * varrho(param(a_l)?)?, 0.72918, "boundary-plane distance below which catenoids are least area"),
        c("abar_c", critical_pitch()?, 2.17968, "helicoid stability threshold coth(a_c)"),
        c("A3", a3_const(), 0.530638, "lower end of the region where phi <= 0"),
        c("A4", a4_const(), 0.715548, "upper end of the region where psi < 0"),
        c(
            "delta",
            oliveira_soret_delta()?,
            0.12763,
            "coaxial-circle ratio cosh(varrho(a_c)) - 1; the reference value is inconsistent with varrho(a_c)",
        ),
    ])
}

fn render(cmd: &Command) -> Result<Vec<u8>> {
    match *cmd {
        Command::Constants { .. } => to_json(
            &json!({ "constants": constants()? }),
            "named constants of the catenoid and helicoid stability theory",
        ),
        Command::ClassifyCatenoid { a } => to_json(
            &classify_catenoid(param(a)?)?,
            "catenoid stability: unstable with Jacobi zero z(a) iff a < a_c, least area iff a >= a_l",
        ),
        Command::ClassifyHelicoid { pitch } => to_json(
            &classify_helicoid(HelicoidPitch::new(pitch)?)?,
            "helicoid stability via the conjugate catenoid: stable iff pitch <= coth(a_c)",
        ),
        Command::RhoCurve {
            a_min,
            a_max,
            samples,
            derivative,
        } => {
            if !(a_min > 0.0) {
                return Err(HypError::domain(format!("a_min must be positive, got {a_min}")));
            }
            let mut rows = Vec::with_capacity(samples);
            for a in grid(a_min, a_max, samples)? {
                let p = param(a)?;
                let v = match derivative {
                    0 => varrho(p)?,
                    1 => varrho_prime(p)?,
                    _ => varrho_second(p)?,
                };
                rows.push(vec![a, v]);
            }
            let col = ["varrho", "varrho_prime", "varrho_second"][derivative as usize];
            to_csv(&["a", col], &rows)
        }
        Command::CatenaryCurve { a, s_max, samples } => {
            let p = param(a)?;
            let mut rows = Vec::with_capacity(samples);
            for s in sym_grid(s_max, samples)? {
                let c = catenary_point(p, s)?;
                rows.push(vec![c.s, c.x, c.y, c.sin_theta]);
            }
            to_csv(&["s", "x", "y", "sin_theta"], &rows)
        }
        Command::JacobiProfile { a, s_max, samples } => {
            let p = param(a)?;
            let mut rows = Vec::with_capacity(samples);
            for s in sym_grid(s_max, samples)? {
                rows.push(vec![s, zeta(p, s), xi(p, s)?]);
            }
            let mut out = to_csv(&["s", "zeta", "xi"], &rows)?;
            if a < find_a_c()? {
                let footer = json!({
                    "a": a,
                    "z": find_z(p)?,
                    "paper_ref": "first positive zero of the variation field xi",
                });
                let line = serde_json::to_string(&round_json(footer)).map_err(|e| HypError::Degenerate(e.to_string()))?;
                out.extend_from_slice(format!("# {line}\n").as_bytes());
            }
            Ok(out)
        }
        Command::Envelope { a_min, a_max, samples } => {
            let a_c = find_a_c()?;
            if !(a_min > 0.0) || !(a_max < a_c) {
                return Err(HypError::domain(format!(
                    "envelope needs 0 < a_min and a_max < a_c = {a_c:.6}, got [{a_min}, {a_max}]"
                )));
            }
            let mut rows = Vec::with_capacity(samples);
            for a in grid(a_min, a_max, samples)? {
                let e = envelope_point(param(a)?)?;
                rows.push(vec![e.a, e.z, e.x, e.y, e.tangency_residual]);
            }
            to_csv(&["a", "z", "x", "y", "tangency_residual"], &rows)
        }
        Command::Intersect { a1, a2 } => {
            let hit = intersect_catenaries(param(a1)?, param(a2)?)?;
            to_json(
                &json!({
                    "a1": a1,
                    "a2": a2,
                    "exists": hit.is_some(),
                    "x": hit.map(|h| h.x),
                    "y": hit.map(|h| h.y),
                }),
                "symmetric intersection of two catenaries; exists iff varrho(a1) < varrho(a2)",
            )
        }
        Command::Area { a, y1 } => to_json(
            &compare_areas(param(a)?, y1)?,
            "area of the catenoid band against the two geodesic disks it spans",
        ),
        Command::Mesh {
            surface,
            model,
            param: value,
            range1,
            range2,
            n1,
            n2,
        } => {
            let mesh = match surface {
                SurfaceArg::Catenoid => catenoid_mesh_in(param(value)?, model.into(), range1, n1, n2)?,
                SurfaceArg::Helicoid => helicoid_mesh(HelicoidPitch::new(value)?, model.into(), range1, range2, n1, n2)?,
            };
            let mut buf = Vec::new();
            write_obj(&mesh, &mut buf).map_err(|e| HypError::Io {
                path: PathBuf::from("<buffer>"),
                source: e,
            })?;
            Ok(buf)
        }
        Command::LemmasVerify { grid } => {
            let verdicts = verify_all(grid)?;
            let all_hold = verdicts.iter().all(|v| v.holds);
            to_json(
                &json!({ "grid": grid, "all_hold": all_hold, "verdicts": verdicts }),
                "sign lemmas for phi, psi, w and the a-derivatives of rho",
            )
        }
    }
}
