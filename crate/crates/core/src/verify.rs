//! Dense sweeps over the identities the solver depends on, reporting the
//! worst-case margin of each. Used by the `verify` command.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::elastica::{chord_angles, constants, jacobian_q, ChordAngles, ParamInterval};
use crate::hermite::{beta_star, energy_e1, grad_e1, invert_q};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub samples: usize,
    /// Distance from failure; positive means the check passed.
    pub margin: f64,
    pub detail: String,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.margin > 0.0
    }
}

fn lattice(lo: f64, hi: f64, n: usize, open: bool) -> Vec<f64> {
    if open {
        (1..=n).map(|i| lo + (hi - lo) * i as f64 / (n + 1) as f64).collect()
    } else if n == 1 {
        vec![0.5 * (lo + hi)]
    } else {
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
    }
}

/// The four sets on which `det DQ < 0`, sampled on `n × n` lattices.
pub fn jacobian_sample_sets(n: usize) -> Vec<(&'static str, Vec<ParamInterval<f64>>)> {
    let t_star = constants::<f64>().t_star;
    let mut sets = Vec::new();
    let pairs = |a: Vec<f64>, b: Vec<f64>, skip: (f64, f64)| -> Vec<ParamInterval<f64>> {
        let mut out = Vec::new();
        for &t1 in &a {
            for &t2 in &b {
                let excluded = (t1 - skip.0).abs() < 1e-12 && (t2 - skip.1).abs() < 1e-12;
                if t1 < t2 && !excluded {
                    out.push(ParamInterval::new(t1, t2).expect("lattice interval"));
                }
            }
        }
        out
    };
    let closed = lattice(-PI, 0.0, n, false);
    sets.push(("c-curves below", pairs(closed.clone(), closed, (-PI, 0.0))));
    sets.push((
        "s-curves about 0",
        pairs(lattice(-t_star, 0.0, n, true), lattice(0.0, t_star, n, true), (f64::NAN, f64::NAN)),
    ));
    let closed = lattice(0.0, PI, n, false);
    sets.push(("c-curves above", pairs(closed.clone(), closed, (0.0, PI))));
    sets.push((
        "s-curves about π",
        pairs(
            lattice(PI - t_star, PI, n, true),
            lattice(PI, PI + t_star, n, true),
            (f64::NAN, f64::NAN),
        ),
    ));
    sets
}

/// `det DQ < 0` on the injectivity sets.
pub fn jacobian_sign(n: usize) -> CheckOutcome {
    let mut samples = 0;
    let mut worst = f64::NEG_INFINITY;
    let mut at = (0.0, 0.0);
    for (_, set) in jacobian_sample_sets(n) {
        for iv in set {
            samples += 1;
            let det = jacobian_q(&iv).det();
            if det > worst {
                worst = det;
                at = (iv.t1(), iv.t2());
            }
        }
    }
    CheckOutcome {
        name: "jacobian determinant negative",
        samples,
        margin: -worst,
        detail: format!("max det {worst:.3e} at ({:.6}, {:.6})", at.0, at.1),
    }
}

fn square_grid(n: usize) -> Vec<ChordAngles<f64>> {
    let axis = lattice(-FRAC_PI_2, FRAC_PI_2, n, false);
    let mut out = Vec::new();
    for &a in &axis {
        for &b in &axis {
            out.push(ChordAngles::new(a, b));
        }
    }
    out
}

fn is_special(a: ChordAngles<f64>) -> bool {
    a.alpha.abs() + a.beta.abs() < 1e-12
        || ((a.alpha.abs() - FRAC_PI_2).abs() < 1e-12
            && (a.beta.abs() - FRAC_PI_2).abs() < 1e-12
            && a.alpha * a.beta < 0.0)
}

/// `Q(Q⁻¹(α, β)) = (α, β)` over the square.
pub fn round_trip(n: usize, tolerance: f64) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    let mut failures = 0;
    for a in square_grid(n) {
        if is_special(a) {
            continue;
        }
        samples += 1;
        match invert_q(a) {
            Ok(iv) => worst = worst.max(chord_angles(&iv).max_abs_diff(a)),
            Err(_) => failures += 1,
        }
    }
    CheckOutcome {
        name: "inverse round trip",
        samples,
        margin: if failures > 0 { -(failures as f64) } else { tolerance - worst },
        detail: format!("max error {worst:.3e}, {failures} failed inversions"),
    }
}

/// `E₁(α, β) = E₁(β, α) = E₁(−α, −β)`.
pub fn symmetry(n: usize, tolerance: f64) -> CheckOutcome {
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for a in square_grid(n) {
        samples += 1;
        let e = energy_e1(a);
        let s = energy_e1(a.swapped());
        let r = energy_e1(a.negated());
        match (e, s, r) {
            (Ok(e), Ok(s), Ok(r)) => worst = worst.max((e - s).abs()).max((e - r).abs()),
            _ => worst = f64::INFINITY,
        }
    }
    CheckOutcome {
        name: "energy symmetry",
        samples,
        margin: tolerance - worst,
        detail: format!("max asymmetry {worst:.3e}"),
    }
}

/// Analytic gradient against central differences on an open lattice,
/// away from the origin.
pub fn gradient(n: usize, tolerance: f64) -> CheckOutcome {
    let h = 1e-5;
    let axis = lattice(-FRAC_PI_2, FRAC_PI_2, n, true);
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for &a in &axis {
        for &b in &axis {
            if a.hypot(b) < 0.05 {
                continue;
            }
            samples += 1;
            let e = |x: f64, y: f64| energy_e1(ChordAngles::new(x, y)).unwrap_or(f64::NAN);
            let g = grad_e1(ChordAngles::new(a, b)).unwrap_or((f64::NAN, f64::NAN));
            let fa = (e(a + h, b) - e(a - h, b)) / (2.0 * h);
            let fb = (e(a, b + h) - e(a, b - h)) / (2.0 * h);
            let scale = g.0.abs().max(g.1.abs()).max(1e-3);
            let err = ((g.0 - fa).abs().max((g.1 - fb).abs())) / scale;
            worst = if err.is_nan() { f64::INFINITY } else { worst.max(err) };
        }
    }
    CheckOutcome {
        name: "gradient vs finite differences",
        samples,
        margin: tolerance - worst,
        detail: format!("max relative error {worst:.3e}"),
    }
}

/// `sign ∂E₁/∂β (α, β) = sign(β − β*_α)` and `|β*_α| ≤ π/2 − Ψ`.
pub fn sign_condition(alphas: usize, betas: usize) -> CheckOutcome {
    let psi = constants::<f64>().psi;
    let mut samples = 0;
    let mut mismatches = 0;
    let mut bound_margin = f64::INFINITY;
    for &alpha in &lattice(-FRAC_PI_2, FRAC_PI_2, alphas, false) {
        let Ok(star) = beta_star(alpha) else {
            mismatches += 1;
            continue;
        };
        bound_margin = bound_margin.min(FRAC_PI_2 - psi + 1e-9 - star.abs());
        for &beta in &lattice(-FRAC_PI_2, FRAC_PI_2, betas, false) {
            let a = ChordAngles::new(alpha, beta);
            if is_special(a) || (beta - star).abs() < 1e-9 {
                continue;
            }
            samples += 1;
            match grad_e1(a) {
                Ok(g) if (g.1 > 0.0) == (beta > star) && g.1 != 0.0 => {}
                _ => mismatches += 1,
            }
        }
    }
    CheckOutcome {
        name: "beta-derivative sign condition",
        samples,
        margin: if mismatches > 0 { -(mismatches as f64) } else { bound_margin },
        detail: format!("{mismatches} sign mismatches, |β*| bound margin {bound_margin:.3e}"),
    }
}

/// Runs every sweep with an `n × n` grid where applicable.
pub fn run_all(n: usize) -> Vec<CheckOutcome> {
    let n = n.max(2);
    vec![
        jacobian_sign(n),
        round_trip(n, 1e-10),
        symmetry(n, 1e-10),
        gradient(n.min(31), 1e-5),
        sign_condition(13, 41),
    ]
}
