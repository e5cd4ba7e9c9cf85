//! Serializable records for fits, single curves and constants, and the
//! canonical JSON writer shared by the CLI and the service.

use relspline::spline::{G2Report, SplineSolution};
use relspline::{SCurve, SCurveKind};
use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use crate::document::ClampSpec;

/// Significant digits kept for every real number written out.
pub const SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentKind {
    Line,
    Elastica,
    Uturn,
}

impl From<SCurveKind> for SegmentKind {
    fn from(k: SCurveKind) -> Self {
        match k {
            SCurveKind::LineSegment => SegmentKind::Line,
            SCurveKind::ElasticaArc => SegmentKind::Elastica,
            SCurveKind::UTurnArc => SegmentKind::Uturn,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentRecord {
    pub kind: SegmentKind,
    pub alpha_deg: f64,
    pub beta_deg: f64,
    /// Bending energy of the piece.
    pub energy: f64,
    /// Chord length.
    pub breadth: f64,
    /// Elastica parameter range; absent for line segments.
    pub params_t1: Option<f64>,
    pub params_t2: Option<f64>,
    pub kappa_start: f64,
    pub kappa_end: f64,
    pub arclength: f64,
    pub start: [f64; 2],
    pub end: [f64; 2],
}

impl From<&SCurve> for SegmentRecord {
    fn from(s: &SCurve) -> Self {
        Self {
            kind: s.kind.into(),
            alpha_deg: s.angles.alpha.to_degrees(),
            beta_deg: s.angles.beta.to_degrees(),
            energy: s.energy,
            breadth: s.breadth,
            params_t1: s.params.map(|p| p.t1()),
            params_t2: s.params.map(|p| p.t2()),
            kappa_start: s.kappa_start,
            kappa_end: s.kappa_end,
            arclength: s.arclength(),
            start: [s.start.re, s.start.im],
            end: [s.end.re, s.end.im],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub index: usize,
    pub psi_deg: f64,
    pub alpha_in_deg: f64,
    pub alpha_out_deg: f64,
    pub kappa_in: f64,
    pub kappa_out: f64,
    pub kappa_jump: f64,
    pub relative_jump: f64,
    pub certified_by_psi: bool,
    pub g2_within_tol: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsRecord {
    pub d: f64,
    pub t_star: f64,
    pub t_bar: f64,
    pub psi_deg: f64,
}

impl ConstantsRecord {
    pub fn current() -> Self {
        let c = relspline::constants();
        Self {
            d: c.d,
            t_star: c.t_star,
            t_bar: c.t_bar,
            psi_deg: c.psi.to_degrees(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub total_energy: f64,
    pub converged: bool,
    pub sweeps: usize,
    pub per_segment: Vec<SegmentRecord>,
    pub per_node: Vec<NodeRecord>,
    pub constants: ConstantsRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint_mode: Option<ClampSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorRecord>,
}

impl FitReport {
    pub fn from_solution(
        solution: &SplineSolution<f64>,
        g2: &G2Report<f64>,
        endpoint_mode: Option<ClampSpec>,
    ) -> Self {
        Self {
            total_energy: solution.total_energy,
            converged: solution.converged,
            sweeps: solution.sweeps_used,
            per_segment: solution.segments.iter().map(SegmentRecord::from).collect(),
            per_node: g2
                .nodes
                .iter()
                .map(|n| NodeRecord {
                    index: n.index,
                    psi_deg: n.psi.to_degrees(),
                    alpha_in_deg: n.alpha_in.to_degrees(),
                    alpha_out_deg: n.alpha_out.to_degrees(),
                    kappa_in: n.kappa_in,
                    kappa_out: n.kappa_out,
                    kappa_jump: n.kappa_jump,
                    relative_jump: n.relative_jump,
                    certified_by_psi: n.certified_by_psi,
                    g2_within_tol: n.g2_within_tol,
                })
                .collect(),
            constants: ConstantsRecord::current(),
            endpoint_mode,
            error: None,
        }
    }

    /// A report for a fit that failed before producing a curve.
    pub fn failed(code: &str, message: String, endpoint_mode: Option<ClampSpec>) -> Self {
        Self {
            total_energy: 0.0,
            converged: false,
            sweeps: 0,
            per_segment: Vec::new(),
            per_node: Vec::new(),
            constants: ConstantsRecord::current(),
            endpoint_mode,
            error: Some(ErrorRecord {
                code: code.to_string(),
                message,
            }),
        }
    }

    pub fn to_json(&self) -> String {
        to_canonical_json(self)
    }
}

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits; idempotent.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// Rounds every floating point number in `value` in place.
pub fn round_value(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = round_significant(n.as_f64().expect("f64 number"));
            if let Some(r) = Number::from_f64(x) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with sorted keys and rounded reals, terminated by a newline.
pub fn to_canonical_json<S: Serialize>(item: &S) -> String {
    let mut value = serde_json::to_value(item).expect("records serialize to JSON");
    round_value(&mut value);
    let mut text = serde_json::to_string_pretty(&value).expect("JSON value serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_idempotent() {
        for x in [1.0 / 3.0, -2.0e-17, 123456.789012345, 0.1 + 0.2, -0.0] {
            let r = round_significant(x);
            assert_eq!(round_significant(r), r);
            assert!((r - x).abs() <= 1e-11 * x.abs());
        }
        assert_eq!(round_significant(-0.0).to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn canonical_json_sorts_keys() {
        let text = to_canonical_json(&ConstantsRecord::current());
        let keys: Vec<usize> = ["\"d\"", "\"psi_deg\"", "\"t_bar\"", "\"t_star\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]), "{text}");
    }
}
