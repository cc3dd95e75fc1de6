//! `gaugegrav`: evaluate chart files and run the verification suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gaugegrav::chartfile::load_chart_file;
use gaugegrav::cli::{
    cmd_curvature, cmd_dirac, cmd_inspect, cmd_superpotential, cmd_verify, exit_code, parse_point, CurvatureOptions, Grid,
    Suite,
};
use gaugegrav::gravity::tensor::T1;
use gaugegrav::report::{Format, Report};
use gaugegrav::{Error, Result};

#[derive(Parser)]
#[command(name = "gaugegrav", version, about = "Tetrad gravity and spinor calculations on chart files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format: text or machine.
    #[arg(long, default_value = "text", value_parser = parse_format)]
    format: Format,
    /// Override the tolerance of every check.
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct PointArgs {
    /// Chart file.
    file: PathBuf,
    /// Evaluation point `x0,x1,x2,x3`; repeatable.
    #[arg(long = "at", allow_hyphen_values = true)]
    at: Vec<String>,
    /// Product grid, one axis per coordinate: `v` or `lo:hi:n`.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Metric, inverse, determinant, signature and tetrad residuals.
    Inspect {
        #[command(flatten)]
        points: PointArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Curvature, Ricci tensors and scalar curvature.
    Curvature {
        #[command(flatten)]
        points: PointArgs,
        #[command(flatten)]
        common: Common,
        /// Add the Christoffel / contorsion / nonmetricity split.
        #[arg(long)]
        decompose: bool,
        /// Add the Hilbert-Einstein field-equation residuals.
        #[arg(long)]
        field_equations: bool,
    },
    /// Lorentz connection, spin connection and the Dirac operator.
    Dirac {
        #[command(flatten)]
        points: PointArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Superpotential at points and flux integrals over coordinate spheres.
    Superpotential {
        #[command(flatten)]
        points: PointArgs,
        #[command(flatten)]
        common: Common,
        /// Comma-separated coordinate radii.
        #[arg(long, value_delimiter = ',')]
        radii: Vec<f64>,
        /// Gauss-Legendre nodes per angle.
        #[arg(long, default_value_t = 64)]
        nodes: usize,
    },
    /// Run the invariant suites.
    Verify {
        /// clifford, gravity, spin or all.
        #[arg(default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_format(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn points(args: &PointArgs) -> Result<Vec<T1>> {
    let mut out: Vec<T1> = args.at.iter().map(|s| parse_point(s)).collect::<Result<_>>()?;
    if let Some(g) = &args.grid {
        out.extend(g.parse::<Grid>()?.points());
    }
    Ok(out)
}

/// Loads the chart and runs `f`; errors come back with their message
/// prefixed by the file name unless they already carry it.
fn run_file(
    args: &PointArgs,
    f: impl FnOnce(&gaugegrav::gravity::Chart, &[T1]) -> Result<Report>,
) -> std::result::Result<Report, (String, i32)> {
    let run = || -> Result<Report> {
        let chart = load_chart_file(&args.file)?;
        f(&chart, &points(args)?)
    };
    run().map_err(|e| {
        let msg = match e {
            Error::ChartFile { .. } => e.to_string(),
            _ => format!("{}: {e}", args.file.display()),
        };
        (msg, exit_code(&e))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, format) = match &cli.command {
        Command::Inspect { points, common } => (run_file(points, |c, p| cmd_inspect(c, p, common.tol)), common.format),
        Command::Curvature { points, common, decompose, field_equations } => {
            let opts = CurvatureOptions { decompose: *decompose, field_equations: *field_equations };
            (run_file(points, |c, p| cmd_curvature(c, p, opts, common.tol)), common.format)
        }
        Command::Dirac { points, common } => (run_file(points, |c, p| cmd_dirac(c, p, common.tol)), common.format),
        Command::Superpotential { points, common, radii, nodes } => {
            (run_file(points, |c, p| cmd_superpotential(c, p, radii, *nodes, common.tol)), common.format)
        }
        Command::Verify { suite, common } => (Ok(cmd_verify(*suite, common.tol)), common.format),
    };
    match result {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code as u8)
        }
    }
}
