use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use relspline::verify::run_all;
use relspline_io::fit::{exit, hermite_exit_code};
use relspline_io::protocol::hermite_curve;
use relspline_io::report::{to_canonical_json, ConstantsRecord, SegmentRecord};
use relspline_io::svg::SvgOptions;
use relspline_io::{run_fit, ClampSpec, FitOptions, PointsDocument};

#[derive(Debug, Parser)]
#[command(name = "relspline", version, about = "Minimal-energy elastica splines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit a spline through the points in a file (JSON document or x,y rows).
    Fit {
        points: PathBuf,
        /// Write an SVG drawing here.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the JSON report here instead of standard output.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Clamp the end tangents, in degrees: FIRST,LAST.
        #[arg(long, value_parser = parse_clamp, allow_hyphen_values = true)]
        clamp: Option<ClampSpec>,
        /// Sampling distance along each piece.
        #[arg(long)]
        spacing: Option<f64>,
        /// Label interior nodes with ψ and G² status in the SVG.
        #[arg(long)]
        labels: bool,
    },
    /// Optimal curve for chord angles (radians unless --deg) on a unit chord.
    Hermite {
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long)]
        deg: bool,
    },
    /// Print the elastica constants.
    Constants,
    /// Run the invariant sweeps and print their margins.
    Verify {
        #[arg(long, default_value_t = 41)]
        grid: usize,
    },
    /// Serve the JSON protocol on 127.0.0.1.
    Serve {
        #[arg(long, default_value_t = 7878)]
        port: u16,
    },
}

fn parse_clamp(s: &str) -> Result<ClampSpec, String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected FIRST,LAST in degrees, got {s:?}"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("{x:?} is not a finite number"))
    };
    Ok(ClampSpec {
        theta_first: parse(a)?,
        theta_last: parse(b)?,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), i32> {
    std::fs::write(path, text).map_err(|e| {
        eprintln!("error: cannot write {}: {e}", path.display());
        exit::VALIDATION
    })
}

fn fit(
    path: &Path,
    svg: Option<&Path>,
    report: Option<&Path>,
    options: FitOptions,
) -> Result<i32, i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        exit::VALIDATION
    })?;
    let doc = PointsDocument::parse(&text).map_err(|e| {
        eprintln!("error: {}: {e}", path.display());
        exit::VALIDATION
    })?;
    let outcome = run_fit(&doc, &options).map_err(|e| {
        eprintln!("error: {e}");
        e.exit_code()
    })?;
    let json = outcome.report.to_json();
    match report {
        Some(p) => write_file(p, &json)?,
        None => print!("{json}"),
    }
    if let (Some(p), Some(drawing)) = (svg, &outcome.svg) {
        write_file(p, drawing)?;
    }
    if let Some(err) = &outcome.report.error {
        eprintln!("error: {}", err.message);
    } else if !outcome.report.converged {
        eprintln!("warning: optimizer stopped after {} sweeps without converging", outcome.report.sweeps);
    }
    Ok(outcome.exit_code)
}

fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Fit {
            points,
            svg,
            report,
            clamp,
            spacing,
            labels,
        } => fit(
            &points,
            svg.as_deref(),
            report.as_deref(),
            FitOptions {
                clamp,
                spacing,
                svg: SvgOptions { labels },
            },
        ),
        Command::Hermite { alpha, beta, deg } => {
            let (a, b) = if deg {
                (alpha.to_radians(), beta.to_radians())
            } else {
                (alpha, beta)
            };
            match hermite_curve(a, b) {
                Ok(curve) => {
                    print!("{}", to_canonical_json(&SegmentRecord::from(&curve)));
                    Ok(exit::SUCCESS)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    Err(hermite_exit_code(&e))
                }
            }
        }
        Command::Constants => {
            print!("{}", to_canonical_json(&ConstantsRecord::current()));
            Ok(exit::SUCCESS)
        }
        Command::Verify { grid } => {
            let outcomes = run_all(grid);
            for o in &outcomes {
                println!(
                    "{} {}: samples={} margin={:.3e} ({})",
                    if o.passed() { "PASS" } else { "FAIL" },
                    o.name,
                    o.samples,
                    o.margin,
                    o.detail
                );
            }
            Ok(if outcomes.iter().all(|o| o.passed()) {
                exit::SUCCESS
            } else {
                exit::INTERNAL
            })
        }
        Command::Serve { port } => {
            let runtime = tokio::runtime::Runtime::new().expect("tokio runtime starts");
            match runtime.block_on(relspline_io::server::serve(port)) {
                Ok(()) => Ok(exit::SUCCESS),
                Err(e) => {
                    eprintln!("error: {e}");
                    Err(exit::VALIDATION)
                }
            }
        }
    };
    result.unwrap_or_else(|code| code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = catch_unwind(AssertUnwindSafe(|| run(cli))).unwrap_or(exit::INTERNAL);
    ExitCode::from(code as u8)
}
