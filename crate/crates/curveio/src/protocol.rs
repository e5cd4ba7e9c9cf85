//! The JSON request/response protocol served at `/api`. See
//! `docs/protocol.md` for the schema.

use std::panic::{catch_unwind, AssertUnwindSafe};

use relspline::hermite::{optimal_scurve, unit_scurve};
use relspline::{ChordAngles, Complex, HermiteError, SCurve, UnitTangent};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::document::{ClampSpec, PointsDocument};
use crate::fit::{exit, hermite_exit_code, run_fit, FitOptions};
use crate::report::{round_value, ConstantsRecord, SegmentRecord};
use crate::sample::{default_spacing, sample_segment};

pub const PROTOCOL_VERSION: u64 = 1;

/// Protocol-level failure, sent as `{error: code, message}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolError {
    pub code: &'static str,
    pub message: String,
    pub status: u16,
}

impl ProtocolError {
    fn new(code: &'static str, status: u16, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            status,
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new("bad_request", 400, message)
    }

    fn from_exit(exit_code: i32, message: String) -> Self {
        match exit_code {
            exit::VALIDATION => Self::new("validation", 422, message),
            exit::NON_CONVERGENCE => Self::new("non_convergence", 422, message),
            _ => Self::new("internal", 500, message),
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "protocol_version": PROTOCOL_VERSION,
            "error": self.code,
            "message": self.message,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Request {
    #[serde(default)]
    protocol_version: Option<u64>,
    op: String,
    #[serde(default)]
    payload: Value,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FitPayload {
    points: Vec<[f64; 2]>,
    #[serde(default)]
    endpoint_mode: Option<ClampSpec>,
    #[serde(default)]
    spacing: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TangentSpec {
    point: [f64; 2],
    direction_deg: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HermitePayload {
    #[serde(default)]
    alpha_deg: Option<f64>,
    #[serde(default)]
    beta_deg: Option<f64>,
    #[serde(default)]
    start: Option<TangentSpec>,
    #[serde(default)]
    end: Option<TangentSpec>,
    #[serde(default)]
    spacing: Option<f64>,
}

fn payload<T: for<'de> Deserialize<'de>>(value: &Value) -> Result<T, ProtocolError> {
    serde_json::from_value(value.clone())
        .map_err(|e| ProtocolError::bad_request(format!("invalid payload: {e}")))
}

fn polyline_value(vertices: &[Complex<f64>]) -> Value {
    Value::Array(vertices.iter().map(|p| json!([p.re, p.im])).collect())
}

/// The unit-breadth optimal curve for chord angles given in radians.
pub fn hermite_curve(alpha: f64, beta: f64) -> Result<SCurve, HermiteError> {
    unit_scurve(ChordAngles::new(alpha, beta))
}

fn op_constants() -> Result<Value, ProtocolError> {
    Ok(json!({ "constants": ConstantsRecord::current() }))
}

fn op_fit(raw: &Value) -> Result<Value, ProtocolError> {
    let p: FitPayload = payload(raw)?;
    let doc = PointsDocument {
        points: p.points,
        endpoint_mode: p.endpoint_mode,
    };
    let options = FitOptions {
        spacing: p.spacing,
        ..FitOptions::default()
    };
    let outcome = run_fit(&doc, &options).map_err(|e| ProtocolError::from_exit(e.exit_code(), e.to_string()))?;
    if let Some(err) = &outcome.report.error {
        return Err(ProtocolError::from_exit(outcome.exit_code, err.message.clone()));
    }
    Ok(json!({
        "report": outcome.report,
        "polylines": outcome.polylines.iter().map(|l| polyline_value(l)).collect::<Vec<_>>(),
    }))
}

fn op_hermite(raw: &Value) -> Result<Value, ProtocolError> {
    let p: HermitePayload = payload(raw)?;
    let curve = match (p.alpha_deg, p.beta_deg, &p.start, &p.end) {
        (Some(a), Some(b), None, None) => hermite_curve(a.to_radians(), b.to_radians()),
        (None, None, Some(s), Some(e)) => optimal_scurve(
            &UnitTangent::new(Complex::new(s.point[0], s.point[1]), s.direction_deg.to_radians()),
            &UnitTangent::new(Complex::new(e.point[0], e.point[1]), e.direction_deg.to_radians()),
        ),
        _ => {
            return Err(ProtocolError::bad_request(
                "hermite needs either alpha_deg and beta_deg, or start and end tangents",
            ))
        }
    }
    .map_err(|e| ProtocolError::from_exit(hermite_exit_code(&e), e.to_string()))?;
    let spacing = match p.spacing {
        Some(s) if s > 0.0 && s.is_finite() => s,
        Some(s) => return Err(ProtocolError::new("validation", 422, format!("spacing must be positive, got {s}"))),
        None => default_spacing(&curve),
    };
    Ok(json!({
        "curve": SegmentRecord::from(&curve),
        "samples": polyline_value(&sample_segment(&curve, spacing)),
    }))
}

fn dispatch(request: &Value) -> Result<Value, ProtocolError> {
    let req: Request = serde_json::from_value(request.clone())
        .map_err(|e| ProtocolError::bad_request(format!("invalid request: {e}")))?;
    if let Some(v) = req.protocol_version {
        if v != PROTOCOL_VERSION {
            return Err(ProtocolError::new(
                "unsupported_version",
                400,
                format!("protocol_version {v} is not supported; this server speaks {PROTOCOL_VERSION}"),
            ));
        }
    }
    let mut body = match req.op.as_str() {
        "constants" => op_constants()?,
        "fit" => op_fit(&req.payload)?,
        "hermite" => op_hermite(&req.payload)?,
        other => {
            return Err(ProtocolError::new("unknown_op", 400, format!("unknown op {other:?}")))
        }
    };
    body["protocol_version"] = json!(PROTOCOL_VERSION);
    body["op"] = json!(req.op);
    Ok(body)
}

/// Answers one request. Never panics; internal failures become an
/// `internal` error response.
pub fn handle_request(request: &Value) -> (u16, Value) {
    let result = catch_unwind(AssertUnwindSafe(|| dispatch(request)))
        .unwrap_or_else(|_| Err(ProtocolError::new("internal", 500, "solver panicked")));
    let (status, mut body) = match result {
        Ok(body) => (200, body),
        Err(e) => (e.status, e.to_value()),
    };
    round_value(&mut body);
    (status, body)
}

/// Parses raw request bytes and answers them.
pub fn handle_bytes(bytes: &[u8]) -> (u16, Value) {
    match serde_json::from_slice::<Value>(bytes) {
        Ok(v) => handle_request(&v),
        Err(e) => {
            let err = ProtocolError::new("bad_json", 400, format!("request is not valid JSON: {e}"));
            (err.status, err.to_value())
        }
    }
}
