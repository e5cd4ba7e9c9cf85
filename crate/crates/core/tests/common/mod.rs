//! Reference computations that share no code with the library: adaptive
//! Simpson quadrature for ξ, chord angles from plain complex division, and
//! central differences.

#![allow(dead_code)]

use num_complex::Complex;
use std::f64::consts::PI;

pub const SIMPSON_TOL: f64 = 1e-12;

fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson quadrature with Richardson correction.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&f, a, b, fa, fm, fb, whole, tol, 50)
}

fn xi_integrand(t: f64) -> f64 {
    let s2 = t.sin().powi(2);
    s2 / (1.0 + s2).sqrt()
}

/// `ξ(t) = ∫₀ᵗ sin²/√(1+sin²)` integrated directly, with no periodicity tricks.
pub fn xi(t: f64) -> f64 {
    simpson(xi_integrand, 0.0, t, SIMPSON_TOL)
}

/// `d = ξ(π)`.
pub fn half_period_rise() -> f64 {
    xi(PI)
}

pub fn point(t: f64) -> Complex<f64> {
    Complex::new(t.sin(), xi(t))
}

pub fn derivative(t: f64) -> Complex<f64> {
    let s = t.sin();
    Complex::new(t.cos(), s * s / (1.0 + s * s).sqrt())
}

/// `(α, β)` from `arg(R'(tᵢ) / (R(t₂) − R(t₁)))`.
pub fn chord_angles(t1: f64, t2: f64) -> (f64, f64) {
    let chord = point(t2) - point(t1);
    ((derivative(t1) / chord).arg(), (derivative(t2) / chord).arg())
}

/// `l · Δξ`, the unit-breadth energy of the segment.
pub fn normalized_energy(t1: f64, t2: f64) -> f64 {
    let chord = point(t2) - point(t1);
    chord.norm() * (xi(t2) - xi(t1))
}

pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Solves `α(−t, 0) = alpha` for `t ∈ (0, t_max)` by bisection on the
/// reference chord angles.
pub fn t_alpha(alpha: f64, t_max: f64) -> f64 {
    let f = |t: f64| chord_angles(-t, 0.0).0 - alpha;
    let (mut lo, mut hi) = (1e-6, t_max);
    assert!(f(lo) * f(hi) < 0.0, "no bracket for t_alpha({alpha})");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) * f(lo) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
