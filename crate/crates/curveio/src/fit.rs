//! Point document in, report and drawing out.

use relspline::spline::{g2_report, optimize};
use relspline::{Complex, EndpointMode, HermiteError, SplineError, SplineProblem};
use thiserror::Error;

use crate::document::{ClampSpec, DocumentError, PointsDocument};
use crate::report::FitReport;
use crate::sample::{default_spacing, sample_segment};
use crate::svg::{render_svg, SvgOptions};

/// Process exit codes shared by every command.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VALIDATION: i32 = 2;
    pub const NON_CONVERGENCE: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("spacing must be a positive number, got {0}")]
    Spacing(f64),
    #[error(transparent)]
    Spline(#[from] SplineError),
}

impl FitError {
    /// Short machine-readable code.
    pub fn code(&self) -> &'static str {
        match self.exit_code() {
            exit::VALIDATION => "validation",
            exit::NON_CONVERGENCE => "non_convergence",
            _ => "internal",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            FitError::Document(_) | FitError::Spacing(_) => exit::VALIDATION,
            FitError::Spline(e) => spline_exit_code(e),
        }
    }
}

pub fn spline_exit_code(e: &SplineError) -> i32 {
    match e {
        SplineError::TooFewPoints(_)
        | SplineError::NonFinite { .. }
        | SplineError::CoincidentPoints { .. }
        | SplineError::EmptyFeasible { .. }
        | SplineError::InfeasibleTangent { .. } => exit::VALIDATION,
        SplineError::Hermite(h) => hermite_exit_code(h),
        SplineError::DescentViolated { .. } => exit::INTERNAL,
    }
}

pub fn hermite_exit_code(e: &HermiteError) -> i32 {
    match e {
        HermiteError::Domain { .. } | HermiteError::CoincidentPoints => exit::VALIDATION,
        HermiteError::NoConvergence { .. } => exit::NON_CONVERGENCE,
        HermiteError::NotApplicable(_) | HermiteError::Elastica(_) => exit::INTERNAL,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FitOptions {
    /// Overrides the document's clamp, in degrees.
    pub clamp: Option<ClampSpec>,
    /// Sampling spacing; defaults to 1/200 of each chord.
    pub spacing: Option<f64>,
    pub svg: SvgOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitOutcome {
    pub report: FitReport,
    /// Absent when the fit failed.
    pub svg: Option<String>,
    pub polylines: Vec<Vec<Complex<f64>>>,
    pub exit_code: i32,
}

/// Runs a fit. Document problems are returned as errors; failures of the
/// fit itself are embedded in the report with a nonzero exit code.
pub fn run_fit(doc: &PointsDocument, options: &FitOptions) -> Result<FitOutcome, FitError> {
    doc.validate()?;
    if let Some(s) = options.spacing {
        if !(s > 0.0 && s.is_finite()) {
            return Err(FitError::Spacing(s));
        }
    }
    let clamp = options.clamp.or(doc.endpoint_mode);
    let mode = match clamp {
        None => EndpointMode::Free,
        Some(c) => EndpointMode::Clamped {
            first: c.theta_first.to_radians(),
            last: c.theta_last.to_radians(),
        },
    };
    let points: Vec<Complex<f64>> = doc.points.iter().map(|p| Complex::new(p[0], p[1])).collect();
    let result = SplineProblem::new(points.clone(), mode).and_then(|problem| optimize(&problem));
    let solution = match result {
        Ok(s) => s,
        Err(e) => {
            let err = FitError::Spline(e);
            return Ok(FitOutcome {
                report: FitReport::failed(err.code(), err.to_string(), clamp),
                svg: None,
                polylines: Vec::new(),
                exit_code: err.exit_code(),
            });
        }
    };
    let g2 = g2_report(&solution);
    let report = FitReport::from_solution(&solution, &g2, clamp);
    let polylines: Vec<Vec<Complex<f64>>> = solution
        .segments
        .iter()
        .map(|s| sample_segment(s, options.spacing.unwrap_or_else(|| default_spacing(s))))
        .collect();
    let svg = render_svg(&polylines, &points, &report.per_node, options.svg);
    Ok(FitOutcome {
        exit_code: if solution.converged {
            exit::SUCCESS
        } else {
            exit::NON_CONVERGENCE
        },
        report,
        svg: Some(svg),
        polylines,
    })
}
