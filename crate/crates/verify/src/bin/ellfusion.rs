//! `ellfusion`: verify the elliptic-fusion identities at sampled points and
//! inspect the objects they are built from.
//!
//! ```text
//! ellfusion verify [--suite NAME]... [--r F] [--tau-im F] [--cutoff N] [--points N]
//!                  [--seed N] [--tol F] [--json PATH] [--stable] [--config PATH]
//! ellfusion eval theta --k K --u RE[,IM] --tau-im F
//! ellfusion print rmatrix|rmatrix22|fateev --u RE[,IM]
//! ```
//!
//! Exit codes: 0 all identities pass, 1 some identity fails, 2 usage or I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ellfusion_verify::{emit_report, parse_config_text, run_suite, Format, HarnessError, Suite, SuiteConfig};
use elliptic_fusion::elliptic::theta;
use elliptic_fusion::fusion::{fateev_r, fuse22, Method};
use elliptic_fusion::vertex::baxter_r;
use elliptic_fusion::{Complex64, ComplexMatrix, EllipticContext, Theta};

const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "ellfusion", version, about = "Numerical checks of elliptic R-matrix fusion identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity suites at sampled points and report residuals
    Verify(VerifyArgs),
    /// Evaluate a single function
    Eval {
        #[command(subcommand)]
        what: EvalCommand,
    },
    /// Print a matrix to 12 significant digits
    Print(PrintArgs),
}

#[derive(Args, Default)]
struct VerifyArgs {
    /// Suite to run (repeatable; default all)
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    #[arg(long)]
    r: Option<f64>,
    /// Imaginary part of the modular parameter
    #[arg(long = "tau-im", allow_negative_numbers = true)]
    tau_im: Option<f64>,
    /// Terms kept in every infinite product
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long)]
    points: Option<usize>,
    /// Sampling seed (VERIFY_SEED overrides it)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON report here (`-` for standard output)
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Omit timings so repeated runs are byte-identical
    #[arg(long)]
    stable: bool,
    /// `key = value` file with the same keys as the long flags
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum EvalCommand {
    /// ϑ_k(u | τ) with τ = i·tau-im
    Theta {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..4))]
        k: u8,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        u: Complex64,
        #[arg(long = "tau-im")]
        tau_im: f64,
        #[arg(long, default_value_t = 32)]
        cutoff: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PrintTarget {
    /// Baxter's 4×4 R-matrix
    Rmatrix,
    /// The 9×9 fused R-matrix
    Rmatrix22,
    /// The 9×9 21-vertex R-matrix
    Fateev,
}

#[derive(Args)]
struct PrintArgs {
    what: PrintTarget,
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    u: Complex64,
    #[arg(long, default_value_t = 6.0)]
    r: f64,
    #[arg(long = "tau-im", default_value_t = 1.2)]
    tau_im: f64,
    #[arg(long, default_value_t = 32)]
    cutoff: usize,
}

/// `RE` or `RE,IM`.
fn parse_complex(s: &str) -> Result<Complex64, String> {
    let mut parts = s.split(',').map(str::trim);
    let re = parts.next().unwrap_or("").parse::<f64>().map_err(|e| format!("real part of '{s}': {e}"))?;
    let im = match parts.next() {
        Some(p) => p.parse::<f64>().map_err(|e| format!("imaginary part of '{s}': {e}"))?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(format!("'{s}' has more than two components"));
    }
    Ok(Complex64::new(re, im))
}

fn build_config(args: &VerifyArgs) -> Result<SuiteConfig, HarnessError> {
    let mut cfg = SuiteConfig::default();
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Io { path: path.display().to_string(), source: e })?;
        for (key, value) in parse_config_text(&text)? {
            cfg.set(&key, &value)?;
        }
    }
    // flags override the file
    if !args.suites.is_empty() {
        cfg.suites = args.suites.iter().map(|s| s.parse::<Suite>()).collect::<Result<_, _>>()?;
    }
    cfg.r = args.r.unwrap_or(cfg.r);
    cfg.tau_im = args.tau_im.unwrap_or(cfg.tau_im);
    cfg.cutoff = args.cutoff.unwrap_or(cfg.cutoff);
    cfg.points = args.points.unwrap_or(cfg.points);
    cfg.seed = args.seed.unwrap_or(cfg.seed);
    cfg.tol = args.tol.unwrap_or(cfg.tol);
    if args.json.is_some() {
        cfg.json = args.json.clone();
    }
    cfg.stable |= args.stable;
    if let Ok(seed) = std::env::var("VERIFY_SEED") {
        cfg.seed = seed.trim().parse().map_err(|_| HarnessError::Config(format!("VERIFY_SEED='{seed}' is not a u64")))?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn verify(args: &VerifyArgs) -> Result<bool, HarnessError> {
    let cfg = build_config(args)?;
    let run = run_suite(&cfg)?;
    for w in &run.warnings {
        eprintln!("warning: {w}");
    }
    let json_on_stdout = cfg.json.as_ref().is_some_and(|p| p.as_os_str() == "-");
    if !json_on_stdout {
        emit_report(&run.reports, Format::Text, None, cfg.stable)?;
    }
    if let Some(path) = &cfg.json {
        emit_report(&run.reports, Format::Json, Some(path), cfg.stable)?;
    }
    Ok(run.all_pass())
}

/// Entries to 12 significant digits, one matrix row per line.
fn format_matrix(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols())
            .map(|j| {
                // `+ 0.0` turns −0 into +0
                let z = m[(i, j)];
                format!("{:>19.11e} {:>19.11e}i", z.re + 0.0, z.im + 0.0)
            })
            .collect();
        out.push_str(&row.join("  "));
        out.push('\n');
    }
    out
}

fn print(args: &PrintArgs) -> Result<(), String> {
    let ctx = EllipticContext::new(args.r, Complex64::new(0.0, args.tau_im))
        .and_then(|c| c.with_cutoff(args.cutoff))
        .map_err(|e| e.to_string())?;
    let m = match args.what {
        PrintTarget::Rmatrix => baxter_r(args.u, &ctx).map(|r| r.into_matrix()),
        PrintTarget::Rmatrix22 => fuse22(args.u, &ctx, Method::ClosedForm).map(|r| r.matrix),
        PrintTarget::Fateev => fateev_r(args.u, &ctx).map(|f| f.matrix()),
    }
    .map_err(|e| e.to_string())?;
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(format_matrix(&m).as_bytes());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE_ERROR } else { 0 });
        }
    };
    match cli.command {
        Command::Verify(args) => match verify(&args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(USAGE_ERROR)
            }
        },
        Command::Eval { what: EvalCommand::Theta { k, u, tau_im, cutoff } } => {
            let value = Theta::try_from(k)
                .and_then(|k| theta(k, u, Complex64::new(0.0, tau_im), cutoff))
                .map_err(|e| e.to_string());
            match value {
                Ok(z) => {
                    println!("{:.16e} {:.16e}", z.re, z.im);
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(USAGE_ERROR)
                }
            }
        }
        Command::Print(args) => match print(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(USAGE_ERROR)
            }
        },
    }
}
