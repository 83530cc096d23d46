//! The `wallforge` command-line interface.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 domain or lattice
//! violation, 4 I/O failure.

mod scenario;
mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde::Serialize;

use crate::charges::{
    central_charge, is_supported_range, lambda, nu, q_form, rho, zhat, ComplexExact, PlanePoint,
};
use crate::chern::{int, parse_scalar, scalar_str, twist, ChernCharacter, Scalar, Slope};
use crate::destabilizers::{
    enumerate_tilt_destabilizers, last_wall_in, EnumerationOptions, EnumerationReport, LastWall,
};
use crate::error::Error;
use crate::polystab::{check_limit_type, classify, pt_config_check, Inequality, LimitType};
use crate::walls::{fmt_f64, gamma_curve, sample_curve, theta_curve, CurveKind, Sample, WallCurve};

pub use scenario::{run_scenario, ScenarioReport, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_IO: i32 = 4;

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Usage(_) => EXIT_USAGE,
        Error::Io(_) => EXIT_IO,
        _ => EXIT_DOMAIN,
    }
}

fn scalar_arg(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

/// Three or four comma-separated rationals, before the lattice check.
#[derive(Debug, Clone)]
pub struct Components(Vec<Scalar>);

fn vector_arg(s: &str) -> Result<Components, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if !(3..=4).contains(&parts.len()) {
        return Err(format!(
            "expected 3 or 4 comma-separated rationals, got {}",
            parts.len()
        ));
    }
    parts
        .into_iter()
        .map(scalar_arg)
        .collect::<Result<_, _>>()
        .map(Components)
}

/// `a:b:step` with exact rationals.
fn grid_arg(s: &str) -> Result<(Scalar, Scalar, Scalar), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err("expected a:b:step".into());
    };
    let (a, b, step) = (scalar_arg(a)?, scalar_arg(b)?, scalar_arg(step)?);
    if !step.is_positive() || b < a {
        return Err("need step > 0 and a <= b".into());
    }
    Ok((a, b, step))
}

fn range_arg(s: &str) -> Result<(Scalar, Scalar), String> {
    let (a, b) = s.split_once(':').ok_or("expected a:b")?;
    let (a, b) = (scalar_arg(a)?, scalar_arg(b)?);
    if a >= b {
        return Err("need a < b".into());
    }
    Ok((a, b))
}

#[derive(Debug, Parser)]
#[command(
    name = "wallforge",
    version,
    about = "Exact wall and chamber computations for tilt and Bridgeland stability"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Twisted Chern character ch^beta(v).
    Twist {
        #[arg(long, value_parser = vector_arg, allow_hyphen_values = true)]
        v: Components,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true, default_value = "0")]
        beta: Scalar,
    },
    /// Tilt slope, Bridgeland slope and rho at a point.
    Slopes(PointArgs),
    /// Central charge, rotated charge and optionally the quadratic form.
    Charge {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long = "K", value_parser = scalar_arg)]
        k: Option<Scalar>,
    },
    /// Theta, Gamma and all tilt walls above t_min.
    Walls(WallsArgs),
    /// Worked examples: collapsing, fake or honest.
    Scenario {
        name: String,
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
        beta: Option<Scalar>,
        #[arg(long, value_parser = scalar_arg)]
        t: Option<Scalar>,
    },
    /// Limit-type classification of polynomial stability at b.
    Polystab {
        #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true, conflicts_with = "grid")]
        b: Option<Scalar>,
        #[arg(long, value_parser = grid_arg, allow_hyphen_values = true)]
        grid: Option<(Scalar, Scalar, Scalar)>,
    },
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_parser = vector_arg, allow_hyphen_values = true)]
    v: Components,
    #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
    beta: Scalar,
    #[arg(long, value_parser = scalar_arg)]
    t: Scalar,
    #[arg(long, value_parser = scalar_arg, allow_hyphen_values = true)]
    s: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
pub struct WallsArgs {
    #[arg(long, value_parser = vector_arg, allow_hyphen_values = true)]
    v: Components,
    #[arg(long, value_parser = scalar_arg, default_value = "1/3")]
    s: Scalar,
    #[arg(long = "t-min", value_parser = scalar_arg, default_value = "1/16")]
    t_min: Scalar,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Plot range `a:b` in beta; chosen from the walls when omitted.
    #[arg(long, value_parser = range_arg, allow_hyphen_values = true)]
    range: Option<(Scalar, Scalar)>,
    #[arg(long, default_value_t = 241)]
    samples: usize,
}

fn chern_from(v: &Components) -> crate::Result<ChernCharacter> {
    let mut a: [Scalar; 4] = Default::default();
    for (slot, x) in a.iter_mut().zip(&v.0) {
        *slot = x.clone();
    }
    ChernCharacter::from_array(a)
}

fn point_from(p: &PointArgs) -> crate::Result<(ChernCharacter, PlanePoint)> {
    Ok((
        chern_from(&p.v)?,
        PlanePoint::new(p.beta.clone(), p.t.clone())?,
    ))
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct TwistOut {
    c: Vec<String>,
}

#[derive(Serialize)]
struct SlopesOut {
    nu_rational: Slope,
    lambda: Slope,
    #[serde(with = "scalar_str")]
    rho: Scalar,
}

#[derive(Serialize)]
struct ChargeOut {
    z: ComplexExact,
    zhat: ComplexExact,
    #[serde(skip_serializing_if = "Option::is_none")]
    q_form: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_in_supported_range: Option<bool>,
}

#[derive(Serialize)]
struct PolystabOut {
    #[serde(flatten)]
    class: serde_json::Value,
    checks: Vec<(LimitType, bool)>,
    pt_breakdown: Vec<Inequality>,
}

fn polystab_entry(b: &Scalar) -> PolystabOut {
    let c = crate::polystab::rho_coeffs(b);
    PolystabOut {
        class: serde_json::to_value(classify(b)).expect("serializable"),
        checks: LimitType::ALL
            .iter()
            .map(|t| (*t, check_limit_type(&c, *t).holds))
            .collect(),
        pt_breakdown: pt_config_check(&c).breakdown,
    }
}

/// Everything the walls command computes, in exact form.
#[derive(Debug, Serialize)]
pub struct WallsReport {
    pub v: ChernCharacter,
    #[serde(with = "scalar_str")]
    pub s: Scalar,
    pub theta: WallCurve,
    pub gamma: WallCurve,
    pub enumeration: EnumerationReport,
    pub last_wall: Option<LastWall>,
}

pub fn walls_report(v: &ChernCharacter, s: &Scalar, t_min: &Scalar) -> crate::Result<WallsReport> {
    let enumeration = enumerate_tilt_destabilizers(v, t_min, EnumerationOptions::default())?;
    Ok(WallsReport {
        v: v.clone(),
        s: s.clone(),
        theta: theta_curve(v)?,
        gamma: gamma_curve(v, s)?,
        last_wall: last_wall_in(&enumeration)?,
        enumeration,
    })
}

/// A sampled curve ready for CSV or SVG output.
pub struct SampledCurve {
    pub id: String,
    pub kind: CurveKind,
    pub role: svg::Role,
    pub samples: Vec<Sample>,
}

fn default_range(rep: &WallsReport) -> (Scalar, Scalar) {
    let m = crate::chern::mu(&rep.v)
        .finite()
        .cloned()
        .unwrap_or_else(|| int(0));
    let hi = m.ceil() + int(1);
    let lo = match rep.enumeration.largest() {
        Some(g) => {
            let (_, r_hi) = crate::roots::sqrt_bounds(&g.radius_sq);
            (&g.center_beta - r_hi).floor() - int(1)
        }
        None => m.floor() - int(3),
    };
    (lo, hi)
}

pub fn sample_walls(
    rep: &WallsReport,
    range: &(Scalar, Scalar),
    n: usize,
) -> crate::Result<Vec<SampledCurve>> {
    let r = (&range.0, &range.1);
    let mut out = vec![
        SampledCurve {
            id: "gamma".into(),
            kind: CurveKind::Gamma,
            role: svg::Role::Gamma,
            samples: sample_curve(&rep.gamma, r, n)?,
        },
        SampledCurve {
            id: "theta".into(),
            kind: CurveKind::Theta,
            role: svg::Role::Theta,
            samples: sample_curve(&rep.theta, r, n)?,
        },
    ];
    for (i, g) in rep.enumeration.walls.iter().enumerate() {
        let wall = rep.enumeration.wall(g);
        out.push(SampledCurve {
            id: format!("wall_{i:04}"),
            kind: CurveKind::TiltWall,
            role: if i == 0 {
                svg::Role::Largest
            } else {
                svg::Role::Wall
            },
            samples: sample_curve(&wall.curve(), r, n)?,
        });
    }
    Ok(out)
}

/// CSV with header `curve_id,kind,beta,alpha,branch`, sorted by `(curve_id, beta)`.
pub fn walls_csv(curves: &[SampledCurve]) -> String {
    let mut rows: Vec<(&str, CurveKind, &Sample)> = curves
        .iter()
        .flat_map(|c| c.samples.iter().map(move |s| (c.id.as_str(), c.kind, s)))
        .collect();
    rows.sort_by(|a, b| a.0.cmp(b.0).then(a.2.beta.total_cmp(&b.2.beta)));
    let mut out = String::from("curve_id,kind,beta,alpha,branch\n");
    for (id, kind, s) in rows {
        out.push_str(&format!(
            "{id},{kind:?},{},{},{}\n",
            fmt_f64(s.beta),
            fmt_f64(s.alpha),
            s.branch.as_str()
        ));
    }
    out
}

fn cmd_walls(a: &WallsArgs) -> crate::Result<String> {
    let v = chern_from(&a.v)?;
    let rep = walls_report(&v, &a.s, &a.t_min)?;
    Ok(match a.format {
        Format::Json => json(&rep),
        Format::Csv | Format::Svg => {
            let range = a.range.clone().unwrap_or_else(|| default_range(&rep));
            let curves = sample_walls(&rep, &range, a.samples)?;
            if a.format == Format::Csv {
                walls_csv(&curves)
            } else {
                let marker = rep
                    .last_wall
                    .as_ref()
                    .map(|l| (l.beta.to_f64(), l.t.to_f64().max(0.0).sqrt()));
                svg::render(&curves, &range, marker)
            }
        }
    })
}

fn polystab_grid(a: &Scalar, b: &Scalar, step: &Scalar) -> Vec<Scalar> {
    let mut out = Vec::new();
    let mut x = a.clone();
    while x <= *b {
        out.push(x.clone());
        x += step;
    }
    out
}

fn dispatch(cmd: &Command) -> crate::Result<String> {
    match cmd {
        Command::Twist { v, beta } => {
            let v = chern_from(v)?;
            let t = twist(&v, beta);
            Ok(json(&TwistOut {
                c: t.c.iter().map(|x| x.to_string()).collect(),
            }))
        }
        Command::Slopes(p) => {
            let (v, pt) = point_from(p)?;
            Ok(json(&SlopesOut {
                nu_rational: nu(&v, &pt),
                lambda: lambda(&v, &pt, &p.s),
                rho: rho(&v, &pt),
            }))
        }
        Command::Charge { point, k } => {
            let (v, pt) = point_from(point)?;
            Ok(json(&ChargeOut {
                z: central_charge(&v, &pt, &point.s),
                zhat: zhat(&v, &pt, &point.s),
                q_form: k.as_ref().map(|k| q_form(&v, &pt, k).to_string()),
                k_in_supported_range: k.as_ref().map(|k| is_supported_range(k, &point.s)),
            }))
        }
        Command::Walls(a) => cmd_walls(a),
        Command::Scenario { name, beta, t } => {
            let point = match (beta, t) {
                (Some(b), Some(t)) => Some(PlanePoint::new(b.clone(), t.clone())?),
                (None, None) => None,
                _ => return Err(Error::Usage("--beta and --t must be given together".into())),
            };
            Ok(json(&run_scenario(name, point)?))
        }
        Command::Polystab { b, grid } => match (b, grid) {
            (Some(b), None) => Ok(json(&polystab_entry(b))),
            (None, Some((a, b, step))) => {
                let entries: Vec<_> = polystab_grid(a, b, step)
                    .iter()
                    .map(polystab_entry)
                    .collect();
                Ok(json(&entries))
            }
            _ => Err(Error::Usage(
                "exactly one of --b or --grid is required".into(),
            )),
        },
    }
}

fn output_path(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Walls(a) => a.out.as_ref(),
        _ => None,
    }
}

/// Parses `args`, runs the command and writes to `out`/`err`. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = dispatch(&cli.command).and_then(|text| match output_path(&cli.command) {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => out.write_all(text.as_bytes()).map_err(Error::from),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point for the binary; honours `WALLFORGE_THREADS`.
pub fn main() -> i32 {
    let threads = std::env::var("WALLFORGE_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_DOMAIN;
        }
    };
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    pool.install(|| run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock()))
}
