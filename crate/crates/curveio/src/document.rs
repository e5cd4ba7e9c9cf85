//! Point list input: a JSON document or plain `x,y` rows.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// End tangent directions in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClampSpec {
    pub theta_first: f64,
    pub theta_last: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsDocument {
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endpoint_mode: Option<ClampSpec>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: cannot read point from {content:?}: {reason}")]
    Row {
        line: usize,
        content: String,
        reason: &'static str,
    },
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("points {index} and {next} coincide", next = index + 1)]
    CoincidentPoints { index: usize },
    #[error("clamp angles must be finite")]
    BadClamp,
}

impl PointsDocument {
    /// Parses either format; text starting with `{` is read as JSON.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let doc = if text.trim_start().starts_with('{') {
            Self::parse_json(text)?
        } else {
            Self::parse_rows(text)?
        };
        doc.validate()?;
        Ok(doc)
    }

    fn parse_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// One point per line as `x,y` or `x y`; blank lines and `#` comments
    /// are skipped.
    fn parse_rows(text: &str) -> Result<Self, DocumentError> {
        let mut points = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let row = |reason| DocumentError::Row {
                line: i + 1,
                content: raw.to_string(),
                reason,
            };
            let fields: Vec<&str> = content
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .collect();
            if fields.len() != 2 {
                return Err(row("expected exactly two numbers"));
            }
            let x = fields[0].parse::<f64>().map_err(|_| row("x is not a number"))?;
            let y = fields[1].parse::<f64>().map_err(|_| row("y is not a number"))?;
            points.push([x, y]);
        }
        Ok(Self {
            points,
            endpoint_mode: None,
        })
    }

    pub fn validate(&self) -> Result<(), DocumentError> {
        if self.points.len() < 2 {
            return Err(DocumentError::TooFewPoints(self.points.len()));
        }
        if let Some(index) = self
            .points
            .iter()
            .position(|p| !(p[0].is_finite() && p[1].is_finite()))
        {
            return Err(DocumentError::NonFinite { index });
        }
        if let Some(index) = self.points.windows(2).position(|w| w[0] == w[1]) {
            return Err(DocumentError::CoincidentPoints { index });
        }
        if let Some(c) = self.endpoint_mode {
            if !(c.theta_first.is_finite() && c.theta_last.is_finite()) {
                return Err(DocumentError::BadClamp);
            }
        }
        Ok(())
    }
}
