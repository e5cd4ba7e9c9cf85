//! File formats, rendering, the JSON service and the command line front end
//! for `relspline`.

pub mod document;
pub mod fit;
pub mod protocol;
pub mod report;
pub mod sample;
pub mod server;
pub mod svg;

pub use document::{ClampSpec, DocumentError, PointsDocument};
pub use fit::{run_fit, FitError, FitOptions, FitOutcome};
pub use report::FitReport;
