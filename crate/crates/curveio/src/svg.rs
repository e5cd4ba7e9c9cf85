//! SVG rendering of a fitted spline.

use std::fmt::Write;

use relspline::Complex;

use crate::report::NodeRecord;

const WIDTH: f64 = 800.0;
const PAD: f64 = 24.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SvgOptions {
    /// Write ψ and the G² status next to each interior node.
    pub labels: bool,
}

struct View {
    min: Complex<f64>,
    max: Complex<f64>,
    scale: f64,
}

impl View {
    fn fit(points: impl Iterator<Item = Complex<f64>>) -> Self {
        let mut min = Complex::new(f64::INFINITY, f64::INFINITY);
        let mut max = Complex::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            min = Complex::new(min.re.min(p.re), min.im.min(p.im));
            max = Complex::new(max.re.max(p.re), max.im.max(p.im));
        }
        let span = (max.re - min.re).max(max.im - min.im).max(f64::MIN_POSITIVE);
        Self {
            min,
            max,
            scale: (WIDTH - 2.0 * PAD) / span,
        }
    }

    fn height(&self) -> f64 {
        (self.max.im - self.min.im) * self.scale + 2.0 * PAD
    }

    fn map(&self, p: Complex<f64>) -> (f64, f64) {
        (
            PAD + (p.re - self.min.re) * self.scale,
            PAD + (self.max.im - p.im) * self.scale,
        )
    }
}

/// Renders one `<path>` per segment polyline, a marker per node and,
/// optionally, per-node labels.
pub fn render_svg(
    polylines: &[Vec<Complex<f64>>],
    nodes: &[Complex<f64>],
    reports: &[NodeRecord],
    options: SvgOptions,
) -> String {
    let view = View::fit(polylines.iter().flatten().chain(nodes).copied());
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\">",
        w = WIDTH,
        h = view.height().ceil()
    );
    out.push_str("  <!-- y is flipped to screen convention: mathematical +y points up the page -->\n");
    out.push_str("  <g fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1.5\">\n");
    for (i, line) in polylines.iter().enumerate() {
        let mut d = String::new();
        for (k, p) in line.iter().enumerate() {
            let (x, y) = view.map(*p);
            let _ = write!(d, "{}{x:.3} {y:.3}", if k == 0 { "M" } else { " L" });
        }
        let _ = writeln!(out, "    <path class=\"segment\" data-index=\"{i}\" d=\"{d}\"/>");
    }
    out.push_str("  </g>\n  <g stroke=\"none\">\n");
    for (j, p) in nodes.iter().enumerate() {
        let (x, y) = view.map(*p);
        let report = reports.iter().find(|r| r.index == j);
        let fill = match report {
            Some(r) if !r.g2_within_tol => "#c0392b",
            Some(r) if !r.certified_by_psi => "#d68910",
            _ => "#222222",
        };
        let _ = writeln!(
            out,
            "    <circle class=\"node\" data-index=\"{j}\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3.5\" fill=\"{fill}\"/>"
        );
        if let (true, Some(r)) = (options.labels, report) {
            let _ = writeln!(
                out,
                "    <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"11\" font-family=\"sans-serif\">ψ={:.2}° {}</text>",
                x + 6.0,
                y - 6.0,
                r.psi_deg,
                if r.g2_within_tol { "G²" } else { "not G²" }
            );
        }
    }
    out.push_str("  </g>\n</svg>\n");
    out
}
