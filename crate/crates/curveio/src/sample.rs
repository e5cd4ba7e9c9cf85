//! Polylines at roughly uniform arclength spacing.

use relspline::{Complex, SCurve};

/// Vertices along `s`, about `spacing` apart, with the exact endpoints
/// first and last.
///
/// Elastica arcs are stepped in arclength by integrating
/// `dt/ds = √(1 + sin²t) / scale` with classical Runge–Kutta.
pub fn sample_segment(s: &SCurve, spacing: f64) -> Vec<Complex<f64>> {
    assert!(spacing > 0.0 && spacing.is_finite(), "spacing must be positive");
    let length = s.arclength();
    let steps = ((length / spacing).round() as usize).max(1);
    let mut out = Vec::with_capacity(steps + 1);
    out.push(s.start);
    let (t1, _) = s.param_range();
    match s.params {
        None => {
            for k in 1..steps {
                out.push(s.point_at(k as f64 / steps as f64));
            }
        }
        Some(_) => {
            let h = length / steps as f64;
            let rate = |t: f64| (1.0 + t.sin().powi(2)).sqrt() / s.scale;
            let mut t = t1;
            for _ in 1..steps {
                let k1 = rate(t);
                let k2 = rate(t + 0.5 * h * k1);
                let k3 = rate(t + 0.5 * h * k2);
                let k4 = rate(t + h * k3);
                t += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                out.push(s.point_at(t));
            }
        }
    }
    out.push(s.end);
    out
}

/// Default spacing for a segment: 1/200 of its chord.
pub fn default_spacing(s: &SCurve) -> f64 {
    s.breadth / 200.0
}

pub fn polyline_length(vertices: &[Complex<f64>]) -> f64 {
    vertices.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
}
