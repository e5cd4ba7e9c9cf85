//! Minimal-energy interpolating curves built from rectangular elastica.
//!
//! The crate is organized bottom-up:
//!
//! * [`elastica`]: the rectangular elastica `R(t)`, its chord-angle map `Q`,
//!   Jacobian, the `W` function and the global constants `d`, `t*`, `t̄`, `Ψ`.
//! * [`hermite`]: the optimal s-curve between two unit tangents, its bending
//!   energy `E₁(α, β)` and gradient.
//! * [`spline`]: restricted elastic splines through a point list, with a
//!   per-node G² report.
//! * [`verify`]: dense sweeps over the identities the solver relies on.
//!
//! All numeric code is generic over [`Real`] (`f32` or `f64`). The aliases
//! at the crate root fix `f64`.

pub mod angle;
pub mod elastica;
pub mod hermite;
pub mod quadrature;
mod roots;
pub mod scalar;
pub mod spline;
pub mod verify;

pub use num_complex::Complex;
pub use scalar::Real;

pub use elastica::ElasticaError;
pub use hermite::{HermiteError, Region, SCurveKind};
pub use spline::SplineError;

pub type Point = Complex<f64>;
pub type ParamInterval = elastica::ParamInterval<f64>;
pub type ChordAngles = elastica::ChordAngles<f64>;
pub type ElasticaConstants = elastica::ElasticaConstants<f64>;
pub type JacobianDQ = elastica::JacobianDQ<f64>;
pub type GammaForm = elastica::GammaForm<f64>;
pub type UnitTangent = hermite::UnitTangent<f64>;
pub type SCurve = hermite::SCurve<f64>;
pub type HermiteDiagnostics = hermite::HermiteDiagnostics<f64>;
pub type EndpointMode = spline::EndpointMode<f64>;
pub type Tolerances = spline::Tolerances<f64>;
pub type SplineProblem = spline::SplineProblem<f64>;
pub type SplineSolution = spline::SplineSolution<f64>;
pub type NodeState = spline::NodeState<f64>;
pub type G2Report = spline::G2Report<f64>;
pub type NodeReport = spline::NodeReport<f64>;

/// Double-precision elastica constants, computed once.
pub fn constants() -> &'static ElasticaConstants {
    elastica::constants::<f64>()
}
