mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "wcs", version, about = "Wodzicki-Chern-Simons integrands and checks", args_override_self = true)]
struct Cli {
    /// Flat TOML file mirroring the flags; explicit flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vanishing of the 3-dimensional form on random curvature tensors.
    Cs3Check(Cs3Args),
    /// Full against reduced form, plus the interior term.
    WcsEquiv(EquivArgs),
    /// Pointwise integrand on the circle bundle over a Kähler surface.
    Sasaki(SasakiArgs),
    /// Smallest rotation number past which positivity is certified.
    Threshold(ThresholdArgs),
    /// Integral over Y^{p,q}.
    Ypq(YpqArgs),
    /// Einstein residual of the Y^{p,q} metric.
    YpqEinstein(EinsteinArgs),
    /// Torsion order of H^4 from Chern class coefficients.
    H4(H4Args),
    /// Pretty-print a stored report.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
struct Cs3Args {
    #[arg(long, default_value_t = 3)]
    dim: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct EquivArgs {
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Surface {
    T4,
    Cp2,
    S2xs2,
    K3,
}

#[derive(Args, Debug)]
struct SasakiArgs {
    #[arg(long, value_enum)]
    surface: Surface,
    #[arg(long, allow_negative_numbers = true)]
    p: i64,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    /// Length of the circle fibers.
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Sample for the K3 curvature operator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long)]
    r_inf: f64,
    #[arg(long)]
    vol: f64,
    #[arg(long, allow_negative_numbers = true)]
    sigma: i64,
}

#[derive(Args, Debug)]
struct YpqArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    #[arg(long)]
    rel_tol: Option<f64>,
    #[arg(long)]
    max_refine: Option<usize>,
    /// Gauss-Legendre order per axis.
    #[arg(long)]
    grid: Option<usize>,
}

#[derive(Args, Debug)]
struct EinsteinArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    q: i64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct H4Args {
    #[arg(long, value_delimiter = ',', required = true)]
    coeffs: Vec<u64>,
}

#[derive(Args, Debug)]
struct ReportArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
}

/// Validation failures exit 1, non-convergence exits 2.
pub enum Failure {
    Validation { kind: String, message: String },
    NotConverged(String),
}

impl From<wcs_core::WcsError> for Failure {
    fn from(e: wcs_core::WcsError) -> Self {
        let dbg = format!("{e:?}");
        let kind = dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        Failure::Validation { kind, message: e.to_string() }
    }
}

fn fail(kind: &str, message: impl Into<String>) -> Failure {
    Failure::Validation { kind: kind.into(), message: message.into() }
}

fn report_error(kind: &str, message: &str, code: u8) -> ExitCode {
    let doc = json!({ "error": { "kind": kind, "message": message } });
    eprint!("{}", output::to_json(&doc).unwrap_or_else(|_| format!("{doc}\n")));
    ExitCode::from(code)
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("WCS_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| fail("Environment", format!("WCS_THREADS must be a count, got `{raw}`")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| fail("Environment", e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let argv = match config::merge(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(msg) => return report_error("Config", &msg, 1),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report_error("Usage", e.render().to_string().trim(), 1),
    };
    if let Err(Failure::Validation { kind, message }) = configure_threads() {
        return report_error(&kind, &message, 1);
    }
    let (doc, code) = match commands::run(&cli.command) {
        Ok(doc) => (doc, 0),
        Err(Failure::Validation { kind, message }) => return report_error(&kind, &message, 1),
        Err(Failure::NotConverged(doc)) => (doc, 2),
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &doc) {
                return report_error("Io", &format!("cannot write {}: {e}", path.display()), 1);
            }
        }
        None => print!("{doc}"),
    }
    if code == 2 {
        return report_error("NotConverged", "quadrature did not reach the requested tolerance; see warnings", 2);
    }
    ExitCode::SUCCESS
}
