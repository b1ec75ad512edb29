//! Command-line front end: run verification suites, rewrite expressions to
//! normal form, and print spectra of represented expressions.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsurf::algebra::AlgebraId;
use qsurf::parse::parse_expression;
use qsurf::report::SuiteConfig;
use qsurf::reps::{build_rep, represent, spectrum, RepKind};
use qsurf::scalar::{Exact, Floats, DEFAULT_EPS};
use qsurf::suites::{run_suite, SUITES};
use qsurf::surfaces::SphereC;
use qsurf::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qsurf",
    version,
    about = "Verification laboratory for q-deformed surfaces",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report one line per check
    Verify(VerifyArgs),
    /// Rewrite an expression to its canonical normal form
    NormalForm(NormalFormArgs),
    /// Print the sorted spectrum of a represented expression
    Spectrum(SpectrumArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite id: relations, bases-oracle, geometry, chi, actions, disc,
    /// rp2-reps, ktheory, or all
    #[arg(long, default_value = "all")]
    suite: String,
    /// Deformation parameter, strictly between 0 and 1
    #[arg(long, env = "QSURF_Q", default_value_t = 0.5)]
    q: f64,
    /// Sphere family parameter: a nonnegative real or "inf"
    #[arg(long, env = "QSURF_C", default_value = "inf", value_parser = parse_c)]
    c: SphereC,
    /// Truncation dimension per ladder
    #[arg(long, env = "QSURF_DIM", default_value_t = 64)]
    dim: usize,
    /// Tolerance for floating-point residual checks
    #[arg(long, env = "QSURF_TOL", default_value_t = 1e-10)]
    tol: f64,
    /// Seed for the sampled checks
    #[arg(long, env = "QSURF_SEED", default_value_t = 42)]
    seed: u64,
    /// Write the rendered report to this path instead of stdout
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// List the available suites and exit
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct NormalFormArgs {
    /// Expression, e.g. "B'*B + A^2 - 1" (postfix ' is the adjoint)
    expr: String,
    /// Algebra: equator, sphere, disc, or rp2
    #[arg(long)]
    algebra: String,
    /// Evaluate coefficients at this q instead of symbolically
    #[arg(long, env = "QSURF_Q")]
    q: Option<f64>,
    /// Sphere family parameter (only used with --q)
    #[arg(long, env = "QSURF_C", value_parser = parse_c)]
    c: Option<SphereC>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Expression in the representation's algebra; must be self-adjoint
    expr: String,
    /// Representation: sphere-plus, sphere-minus, sphere-theta, disc,
    /// disc-theta, rp2, or rp2-theta
    #[arg(long)]
    rep: String,
    /// Truncation dimension
    #[arg(long, env = "QSURF_DIM", default_value_t = 64)]
    dim: usize,
    /// Deformation parameter
    #[arg(long, env = "QSURF_Q", default_value_t = 0.5)]
    q: f64,
    /// Sphere family parameter for the sphere representations
    #[arg(long, env = "QSURF_C", default_value = "inf", value_parser = parse_c)]
    c: SphereC,
    /// Circle angle for the one-dimensional representations
    #[arg(long, default_value_t = 0.0)]
    theta: f64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_c(s: &str) -> std::result::Result<SphereC, String> {
    if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
        return Ok(SphereC::Infinity);
    }
    let v: f64 = s
        .parse()
        .map_err(|_| format!("expected a nonnegative real or \"inf\", got `{s}`"))?;
    if !v.is_finite() || v < 0.0 {
        return Err(format!("expected a nonnegative real or \"inf\", got `{s}`"));
    }
    Ok(SphereC::Finite(v))
}

fn parse_algebra(s: &str) -> Result<AlgebraId> {
    match s {
        "equator" => Ok(AlgebraId::Equator),
        "sphere" => Ok(AlgebraId::Sphere),
        "disc" => Ok(AlgebraId::Disc),
        "rp2" => Ok(AlgebraId::Rp2),
        _ => Err(Error::InvalidParams(format!(
            "unknown algebra `{s}` (expected equator, sphere, disc, or rp2)"
        ))),
    }
}

fn parse_rep(s: &str, theta: f64) -> Result<RepKind> {
    match s {
        "sphere-plus" => Ok(RepKind::SpherePlus),
        "sphere-minus" => Ok(RepKind::SphereMinus),
        "sphere-theta" => Ok(RepKind::SphereTheta(theta)),
        "disc" => Ok(RepKind::DiscInfinite),
        "disc-theta" => Ok(RepKind::DiscTheta(theta)),
        "rp2" => Ok(RepKind::Rp2Infinite),
        "rp2-theta" => Ok(RepKind::Rp2Theta(theta)),
        _ => Err(Error::InvalidParams(format!(
            "unknown representation `{s}` (expected sphere-plus, sphere-minus, \
             sphere-theta, disc, disc-theta, rp2, or rp2-theta)"
        ))),
    }
}

/// Run the suite; `Ok(true)` means every check passed.
fn cmd_verify(a: &VerifyArgs) -> Result<bool> {
    if a.list {
        let width = SUITES.iter().map(|(id, _)| id.len()).max().unwrap_or(0);
        for (id, blurb) in SUITES {
            println!("{id:width$}  {blurb}");
        }
        return Ok(true);
    }
    let cfg = SuiteConfig {
        q: a.q,
        c: a.c,
        dim: a.dim,
        tol: a.tol,
        seed: a.seed,
        suite: a.suite.clone(),
    };
    let report = run_suite(&cfg)?;
    let rendered = match a.format {
        Format::Json => report.to_json()?,
        Format::Text => report.to_text(),
    };
    match &a.report {
        Some(path) => {
            fs::write(path, &rendered)?;
            let passed = report.checks.iter().filter(|c| c.pass).count();
            println!(
                "result: {} ({passed}/{} checks) -> {}",
                if report.pass { "PASS" } else { "FAIL" },
                report.checks.len(),
                path.display()
            );
        }
        None => print!("{rendered}"),
    }
    Ok(report.pass)
}

fn cmd_normal_form(a: &NormalFormArgs) -> Result<bool> {
    let algebra = parse_algebra(&a.algebra)?;
    match a.q {
        None => {
            let pres = qsurf::surfaces::build_presentation(algebra, Exact)?;
            let elem = parse_expression(&a.expr, Exact, algebra)?;
            println!("{}", pres.normal_form(&elem)?);
        }
        Some(q) => {
            let c = match a.c {
                Some(SphereC::Finite(v)) => Some(v),
                Some(SphereC::Infinity) | None => None,
            };
            if algebra == AlgebraId::Sphere && c.is_none() {
                return Err(Error::InvalidParams(
                    "the sphere family needs a finite --c; use the equator algebra for c = inf"
                        .into(),
                ));
            }
            let ring = Floats::with_c_opt(q, c, DEFAULT_EPS)?;
            let pres = qsurf::surfaces::build_presentation(algebra, ring)?;
            let elem = parse_expression(&a.expr, ring, algebra)?;
            println!("{}", pres.normal_form(&elem)?);
        }
    }
    Ok(true)
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<bool> {
    let kind = parse_rep(&a.rep, a.theta)?;
    let rep = build_rep(kind, a.q, a.c, a.dim)?;
    let c = rep.c.finite();
    let ring = Floats::with_c_opt(a.q, c, DEFAULT_EPS)?;
    let elem = parse_expression(&a.expr, ring, rep.algebra)?;
    let m = represent(&elem, &rep)?;
    let vals = spectrum(&m)?;
    match a.format {
        Format::Json => {
            let body = serde_json::to_string(&vals)
                .map_err(|e| Error::InvalidParams(format!("spectrum serialization: {e}")))?;
            println!("{body}");
        }
        Format::Text => {
            for v in vals {
                println!("{v}");
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::NormalForm(a) => cmd_normal_form(a),
        Command::Spectrum(a) => cmd_spectrum(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
