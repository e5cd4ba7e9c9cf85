//! The rectangular elastica `R(t) = sin t + i ξ(t)` and the scalar functions
//! built on its segments `R_[t₁,t₂]`.
//!
//! `ξ` solves `ξ'(t) = sin²t / √(1 + sin²t)`, `ξ(0) = 0`. It is odd and
//! satisfies `ξ(t + π) = d + ξ(t)` with `d = ξ(π)`, so the curve rises by
//! `2d` every period. Curvature is `κ(t) = 2 sin t` and the bending energy
//! of a segment is simply `ξ(t₂) − ξ(t₁)`.
//!
//! The chord-angle map `Q : (t₁, t₂) ↦ (α, β)` and its Jacobian are the
//! workhorses of the Hermite solver; `W` factors the Jacobian determinant
//! off the lines `sin t = 0`.

use num_complex::Complex;
use thiserror::Error;

use crate::angle::arg_ratio;
use crate::quadrature::integrate;
use crate::roots::bisect;
use crate::scalar::{lit, tol, Real};

/// Panels used for ξ on the reduced range `[0, π]`.
const XI_PANELS: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElasticaError {
    #[error("invalid parameter interval ({t1}, {t2}): need t1 < t2 < t1 + 2π")]
    InvalidInterval { t1: f64, t2: f64 },
    #[error("W(t1, t2) is undefined when sin t1 · sin t2 = 0")]
    WUndefined,
    #[error("no sign change while bracketing {0}")]
    NoBracket(&'static str),
    #[error("gamma-form arguments outside the canonical domain: {0}")]
    GammaDomain(String),
}

/// Global constants of the rectangular elastica.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticaConstants<T> {
    /// Half-period rise `ξ(π)`.
    pub d: T,
    /// Root of `t ↦ W(−t, t)` in `(π/2, π)`.
    pub t_star: T,
    /// Root of `t ↦ β(0, t) − π/2` in `(0, t_star)`.
    pub t_bar: T,
    /// Stencil-angle threshold `π/2 − |α(0, t_bar)|`.
    pub psi: T,
    /// `|α(0, t_bar)|`.
    pub psi_bar: T,
}

/// Parameters `(t₁, t₂)` of an elastica segment, with `t₁ < t₂ < t₁ + 2π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamInterval<T> {
    t1: T,
    t2: T,
}

impl<T: Real> ParamInterval<T> {
    pub fn new(t1: T, t2: T) -> Result<Self, ElasticaError> {
        let two_pi = T::PI() + T::PI();
        if t1.is_finite() && t2.is_finite() && t1 < t2 && t2 - t1 < two_pi {
            Ok(Self { t1, t2 })
        } else {
            Err(ElasticaError::InvalidInterval {
                t1: t1.to_f64().unwrap_or(f64::NAN),
                t2: t2.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    pub(crate) fn new_unchecked(t1: T, t2: T) -> Self {
        debug_assert!(t1 < t2, "unchecked interval must be increasing");
        Self { t1, t2 }
    }

    pub fn t1(&self) -> T {
        self.t1
    }

    pub fn t2(&self) -> T {
        self.t2
    }

    pub fn width(&self) -> T {
        self.t2 - self.t1
    }

    /// Same interval translated by `by` in parameter space.
    pub fn shifted(&self, by: T) -> Self {
        Self {
            t1: self.t1 + by,
            t2: self.t2 + by,
        }
    }

    /// Representative on the cylinder with `t₁ ∈ [−π, π)`.
    pub fn canonical(&self) -> Self {
        let pi = T::PI();
        let two_pi = pi + pi;
        let k = ((self.t1 + pi) / two_pi).floor();
        let mut out = self.shifted(-k * two_pi);
        if out.t1 >= pi {
            out = out.shifted(-two_pi);
        } else if out.t1 < -pi {
            out = out.shifted(two_pi);
        }
        out
    }
}

/// Signed chord angles `(α, β)` of an s-curve.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ChordAngles<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Real> ChordAngles<T> {
    pub fn new(alpha: T, beta: T) -> Self {
        Self { alpha, beta }
    }

    /// Angles of the reversed curve.
    pub fn swapped(self) -> Self {
        Self::new(self.beta, self.alpha)
    }

    /// Angles of the mirror image.
    pub fn negated(self) -> Self {
        Self::new(-self.alpha, -self.beta)
    }

    /// Whether both angles lie in `[−π/2 − slack, π/2 + slack]`.
    pub fn in_square(self, slack: T) -> bool {
        let lim = T::FRAC_PI_2() + slack;
        self.alpha.abs() <= lim && self.beta.abs() <= lim
    }

    pub fn max_abs_diff(self, other: Self) -> T {
        (self.alpha - other.alpha)
            .abs()
            .max((self.beta - other.beta).abs())
    }
}

/// Unit tangent direction (an angle) and speed `|R'(t)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticaTangent<T> {
    pub direction: T,
    pub speed: T,
}

/// Entries of the Jacobian of `Q : (t₁, t₂) ↦ (α, β)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianDQ<T> {
    pub d_alpha_dt1: T,
    pub d_alpha_dt2: T,
    pub d_beta_dt1: T,
    pub d_beta_dt2: T,
}

impl<T: Real> JacobianDQ<T> {
    pub fn det(&self) -> T {
        self.d_alpha_dt1 * self.d_beta_dt2 - self.d_alpha_dt2 * self.d_beta_dt1
    }

    /// Solves `DQ · x = rhs`; `None` when the matrix is numerically singular.
    pub fn solve(&self, rhs: (T, T)) -> Option<(T, T)> {
        let det = self.det();
        let scale = self
            .d_alpha_dt1
            .abs()
            .max(self.d_alpha_dt2.abs())
            .max(self.d_beta_dt1.abs())
            .max(self.d_beta_dt2.abs());
        if !det.is_finite() || det.abs() <= T::epsilon() * scale * scale {
            return None;
        }
        let x1 = (rhs.0 * self.d_beta_dt2 - self.d_alpha_dt2 * rhs.1) / det;
        let x2 = (self.d_alpha_dt1 * rhs.1 - self.d_beta_dt1 * rhs.0) / det;
        Some((x1, x2))
    }
}

/// Quantities of the γ-parametrized energy bound for canonical chord angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaForm<T> {
    pub gamma: T,
    pub y1: T,
    pub y2: T,
    pub g: T,
    pub sigma: T,
    pub q: T,
}

/// `ξ'(t) = sin²t / √(1 + sin²t)`.
#[inline]
pub fn xi_prime<T: Real>(t: T) -> T {
    let s2 = t.sin().powi(2);
    s2 / (T::one() + s2).sqrt()
}

/// Half-period rise `d = ξ(π)`.
pub fn half_period_rise<T: Real>() -> T {
    *T::tables()
        .half_period
        .get_or_init(|| integrate(xi_prime::<T>, T::zero(), T::PI(), XI_PANELS))
}

/// `ξ(t)`, by oddness and `ξ(t + π) = d + ξ(t)` reduced to a quadrature on
/// `[0, π)`.
pub fn xi<T: Real>(t: T) -> T {
    if t < T::zero() {
        return -xi(-t);
    }
    let pi = T::PI();
    let k = (t / pi).floor();
    let r = (t - k * pi).max(T::zero());
    let base = integrate(xi_prime::<T>, T::zero(), r, XI_PANELS);
    if k == T::zero() {
        base
    } else {
        k * half_period_rise::<T>() + base
    }
}

/// `ξ(t₂) − ξ(t₁)`, integrated directly over short intervals to avoid
/// cancellation.
pub fn xi_delta<T: Real>(t1: T, t2: T) -> T {
    let pi = T::PI();
    let w = t2 - t1;
    if w.abs() <= pi {
        let panels = (lit::<T>(XI_PANELS as f64) * w.abs() / pi)
            .ceil()
            .to_usize()
            .unwrap_or(XI_PANELS)
            .max(1);
        integrate(xi_prime::<T>, t1, t2, panels)
    } else {
        xi(t2) - xi(t1)
    }
}

/// `R(t) = sin t + i ξ(t)`.
pub fn elastica_point<T: Real>(t: T) -> Complex<T> {
    Complex::new(t.sin(), xi(t))
}

/// Unit tangent `R'(t)/|R'(t)| = cos t √(1+sin²t) + i sin²t`.
#[inline]
pub fn unit_tangent_vector<T: Real>(t: T) -> Complex<T> {
    let (s, c) = t.sin_cos();
    Complex::new(c * (T::one() + s * s).sqrt(), s * s)
}

pub fn elastica_tangent<T: Real>(t: T) -> ElasticaTangent<T> {
    let s = t.sin();
    let u = unit_tangent_vector(t);
    ElasticaTangent {
        direction: u.im.atan2(u.re),
        speed: (T::one() + s * s).sqrt().recip(),
    }
}

/// `κ(t) = 2 sin t`.
#[inline]
pub fn elastica_curvature<T: Real>(t: T) -> T {
    lit::<T>(2.0) * t.sin()
}

/// Shared evaluation of a segment: endpoint trig values and the chord.
#[derive(Debug, Clone, Copy)]
pub(crate) struct SegmentEval<T> {
    pub s1: T,
    pub c1: T,
    pub g1: T,
    pub s2: T,
    pub c2: T,
    pub g2: T,
    pub dx: T,
    pub dxi: T,
}

impl<T: Real> SegmentEval<T> {
    pub fn new(iv: &ParamInterval<T>) -> Self {
        let (s1, c1) = iv.t1.sin_cos();
        let (s2, c2) = iv.t2.sin_cos();
        let half = lit::<T>(0.5);
        // sin t₂ − sin t₁ without cancellation.
        let dx = lit::<T>(2.0) * ((iv.t1 + iv.t2) * half).cos() * (iv.width() * half).sin();
        Self {
            s1,
            c1,
            g1: (T::one() + s1 * s1).sqrt(),
            s2,
            c2,
            g2: (T::one() + s2 * s2).sqrt(),
            dx,
            dxi: xi_delta(iv.t1, iv.t2),
        }
    }

    pub fn chord(&self) -> Complex<T> {
        Complex::new(self.dx, self.dxi)
    }

    pub fn length_sq(&self) -> T {
        self.dx * self.dx + self.dxi * self.dxi
    }

    pub fn length(&self) -> T {
        self.dx.hypot(self.dxi)
    }

    pub fn angles(&self) -> ChordAngles<T> {
        let chord = self.chord();
        let u1 = Complex::new(self.c1 * self.g1, self.s1 * self.s1);
        let u2 = Complex::new(self.c2 * self.g2, self.s2 * self.s2);
        ChordAngles::new(arg_ratio(u1, chord), arg_ratio(u2, chord))
    }

    /// `l·|R'(tᵢ)|·sin(angle)`, i.e. the chord crossed with `R'(tᵢ)`.
    fn crosses(&self) -> (T, T) {
        let xp1 = self.s1 * self.s1 / self.g1;
        let xp2 = self.s2 * self.s2 / self.g2;
        (
            -self.c1 * self.dxi + xp1 * self.dx,
            -self.c2 * self.dxi + xp2 * self.dx,
        )
    }

    pub fn jacobian(&self) -> JacobianDQ<T> {
        let l2 = self.length_sq();
        let (cr1, cr2) = self.crosses();
        let two = lit::<T>(2.0);
        JacobianDQ {
            d_alpha_dt1: cr1 / l2 + two * self.s1 / self.g1,
            d_beta_dt1: cr1 / l2,
            d_alpha_dt2: -cr2 / l2,
            d_beta_dt2: -cr2 / l2 + two * self.s2 / self.g2,
        }
    }
}

/// Chord angles `α = arg R'(t₁)/(R(t₂)−R(t₁))`, `β = arg R'(t₂)/(R(t₂)−R(t₁))`.
pub fn chord_angles<T: Real>(iv: &ParamInterval<T>) -> ChordAngles<T> {
    SegmentEval::new(iv).angles()
}

/// Chord length `l = |R(t₂) − R(t₁)|`.
pub fn chord_length<T: Real>(iv: &ParamInterval<T>) -> T {
    SegmentEval::new(iv).length()
}

/// Bending energy `‖R_[t₁,t₂]‖² = ξ(t₂) − ξ(t₁)`.
pub fn segment_energy<T: Real>(iv: &ParamInterval<T>) -> T {
    xi_delta(iv.t1, iv.t2)
}

/// Bending energy of the segment rescaled to unit chord, `l·Δξ`.
pub fn normalized_energy<T: Real>(iv: &ParamInterval<T>) -> T {
    let seg = SegmentEval::new(iv);
    seg.length() * seg.dxi
}

pub fn jacobian_q<T: Real>(iv: &ParamInterval<T>) -> JacobianDQ<T> {
    SegmentEval::new(iv).jacobian()
}

/// `W(t₁,t₂) = 2Δξ + Δx²/Δξ + cos t₂√(1+sin²t₂)/sin t₂ − cos t₁√(1+sin²t₁)/sin t₁`.
///
/// `sign(det DQ) = sign(sin t₁ sin t₂ W)`. Off the lines `sin t = 0` only;
/// callers on those lines must use the determinant directly.
pub fn w_function<T: Real>(iv: &ParamInterval<T>) -> Result<T, ElasticaError> {
    let seg = SegmentEval::new(iv);
    if (seg.s1 * seg.s2).abs() < T::epsilon() {
        return Err(ElasticaError::WUndefined);
    }
    Ok(lit::<T>(2.0) * seg.dxi + seg.dx * seg.dx / seg.dxi + seg.c2 * seg.g2 / seg.s2
        - seg.c1 * seg.g1 / seg.s1)
}

/// Computes `d`, `t*`, `t̄` and `Ψ` from scratch.
pub fn compute_constants<T: Real>() -> Result<ElasticaConstants<T>, ElasticaError> {
    let pi = T::PI();
    let half_pi = T::FRAC_PI_2();
    let d = half_period_rise::<T>();
    let root_tol = tol::<T>(1e-14);
    // W needs sin t₁ sin t₂ resolvable above rounding at the π end.
    let guard = lit::<T>(1e-6).max(T::epsilon().sqrt() * lit(4.0));

    let w_sym = |t: T| {
        w_function(&ParamInterval::new_unchecked(-t, t)).unwrap_or_else(|_| T::nan())
    };
    let t_star = bisect(w_sym, half_pi + guard, pi - guard, root_tol)
        .ok_or(ElasticaError::NoBracket("t* (root of W(-t, t))"))?;

    let beta_gap = |t: T| chord_angles(&ParamInterval::new_unchecked(T::zero(), t)).beta - half_pi;
    let t_bar = bisect(beta_gap, lit(1e-3), t_star, root_tol)
        .ok_or(ElasticaError::NoBracket("t̄ (root of β(0, t) − π/2)"))?;

    let psi_bar = chord_angles(&ParamInterval::new_unchecked(T::zero(), t_bar))
        .alpha
        .abs();
    Ok(ElasticaConstants {
        d,
        t_star,
        t_bar,
        psi: half_pi - psi_bar,
        psi_bar,
    })
}

/// Cached constants for precision `T`.
pub fn constants<T: Real>() -> &'static ElasticaConstants<T> {
    T::tables().constants.get_or_init(|| {
        compute_constants().expect("elastica constants must bracket; quadrature is broken")
    })
}

/// `∫₀^a √(sin τ) dτ` for `a ∈ [0, π/2]`, with `τ = u²` near the origin to
/// remove the square-root endpoint singularity.
fn sqrt_sin_integral_lower<T: Real>(a: T) -> T {
    let split = T::FRAC_PI_4();
    let near = a.min(split);
    let head = integrate(
        |u: T| lit::<T>(2.0) * u * (u * u).sin().max(T::zero()).sqrt(),
        T::zero(),
        near.sqrt(),
        2,
    );
    if a <= split {
        head
    } else {
        head + integrate(|t: T| t.sin().sqrt(), split, a, 2)
    }
}

/// `∫₀^a √(sin τ) dτ` for `a ∈ [0, π]`, reflecting about `π/2` for the upper
/// half so both endpoint singularities are handled.
pub(crate) fn sqrt_sin_integral<T: Real>(a: T) -> T {
    let half_pi = T::FRAC_PI_2();
    if a <= half_pi {
        sqrt_sin_integral_lower(a)
    } else {
        let full = sqrt_sin_integral_lower(half_pi);
        full + full - sqrt_sin_integral_lower((T::PI() - a).max(T::zero()))
    }
}

/// `sin(x − g)`, evaluated through `π − (x − g)` past `π/2` so it vanishes
/// exactly at `x − g = π` when `π − x` is exact.
fn sin_of_difference<T: Real>(x: T, g: T) -> T {
    let a = x - g;
    if a > T::FRAC_PI_2() {
        ((T::PI() - x) + g).sin()
    } else {
        a.sin()
    }
}

/// `y₁, y₂, G, σ, q` at `γ` for canonical chord angles
/// (`α ∈ (0,π)`, `|β| ≤ α`, `β > α − π`, `γ ∈ [α−π, β] ∩ (−∞, 0)`).
pub fn gamma_form<T: Real>(alpha: T, beta: T, gamma: T) -> Result<GammaForm<T>, ElasticaError> {
    let pi = T::PI();
    let err = |what: &str| {
        Err(ElasticaError::GammaDomain(format!(
            "{what} (alpha = {alpha}, beta = {beta}, gamma = {gamma})"
        )))
    };
    if !(alpha > T::zero() && alpha < pi) {
        return err("alpha must lie in (0, π)");
    }
    if beta.abs() > alpha || beta <= alpha - pi {
        return err("need |beta| <= alpha and beta > alpha - π");
    }
    if !(gamma >= alpha - pi && gamma <= beta && gamma < T::zero()) {
        return err("gamma outside [alpha - π, beta] ∩ (-∞, 0)");
    }
    let half = lit::<T>(0.5);
    let y1 = half * sqrt_sin_integral((alpha - gamma).min(pi));
    let y2 = half * sqrt_sin_integral((beta - gamma).max(T::zero()).min(pi));
    let h = y1 + y2;
    let (sg, cg) = gamma.sin_cos();
    let root_a = sin_of_difference(alpha, gamma).max(T::zero()).sqrt();
    let root_b = sin_of_difference(beta, gamma).max(T::zero()).sqrt();
    Ok(GammaForm {
        gamma,
        y1,
        y2,
        g: h * h / -sg,
        sigma: cg + sg / h * (root_a + root_b),
        q: -sg / h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    // Frozen from a 30-digit adaptive quadrature of sin²/√(1+sin²) on [0, π].
    const D_REFERENCE: f64 = 1.198_140_234_735_592_2;

    fn iv(t1: f64, t2: f64) -> ParamInterval<f64> {
        ParamInterval::new(t1, t2).unwrap()
    }

    #[test]
    fn xi_basics() {
        assert_eq!(xi(0.0), 0.0);
        assert_eq!(xi(-0.7), -xi(0.7));
        assert!((xi(PI) - D_REFERENCE).abs() < 1e-14);
        assert!((half_period_rise::<f64>() - D_REFERENCE).abs() < 1e-14);
    }

    #[test]
    fn xi_period_shift() {
        for &t in &[-5.0, -1.3, 0.2, 2.9, 7.4] {
            assert!((xi(t + PI) - xi(t) - D_REFERENCE).abs() < 1e-13, "t = {t}");
        }
    }

    #[test]
    fn point_examples() {
        let p = elastica_point(0.0);
        assert_eq!((p.re, p.im), (0.0, 0.0));
        let p = elastica_point(PI);
        assert!(p.re.abs() < 1e-15 && (p.im - D_REFERENCE).abs() < 1e-14);
        let t = 0.83;
        let (a, b) = (elastica_point(t), elastica_point(t + 2.0 * PI));
        assert!((b.re - a.re).abs() < 1e-14);
        assert!((b.im - a.im - 2.0 * D_REFERENCE).abs() < 1e-13);
    }

    #[test]
    fn tangent_examples() {
        let t0 = elastica_tangent(0.0);
        assert_eq!(t0.direction, 0.0);
        assert_eq!(t0.speed, 1.0);
        let t = elastica_tangent(FRAC_PI_2);
        assert!((t.direction - FRAC_PI_2).abs() < 1e-15);
        assert!((t.speed - 0.5f64.sqrt()).abs() < 1e-15);
        // R is odd, so R'(-t) = R'(t) and the direction is even in t.
        let (a, b) = (elastica_tangent(0.3f64), elastica_tangent(-0.3f64));
        assert!((a.direction - b.direction).abs() < 1e-15);
        assert!(a.direction > 0.0);
    }

    #[test]
    fn curvature_examples() {
        assert_eq!(elastica_curvature(0.0), 0.0);
        assert_eq!(elastica_curvature(FRAC_PI_2), 2.0);
        assert_eq!(elastica_curvature(-FRAC_PI_2), -2.0);
    }

    #[test]
    fn chord_angle_examples() {
        let q = chord_angles(&iv(-PI, 0.0));
        assert!((q.alpha - FRAC_PI_2).abs() < 1e-14 && (q.beta + FRAC_PI_2).abs() < 1e-14);
        let q = chord_angles(&iv(0.0, PI));
        assert!((q.alpha + FRAC_PI_2).abs() < 1e-14 && (q.beta - FRAC_PI_2).abs() < 1e-14);
        let q = chord_angles(&iv(-1.0, 1.0));
        assert!((q.alpha - q.beta).abs() < 1e-14);
    }

    #[test]
    fn chord_length_and_energies() {
        assert!((chord_length(&iv(-PI, 0.0)) - D_REFERENCE).abs() < 1e-14);
        assert!((chord_length(&iv(0.0, PI)) - D_REFERENCE).abs() < 1e-14);
        assert!((segment_energy(&iv(0.0, PI)) - D_REFERENCE).abs() < 1e-14);
        assert!((segment_energy(&iv(-0.5, 0.5)) - 2.0 * xi(0.5)).abs() < 1e-15);
        let (a, b) = (-0.4, 1.9);
        assert!((segment_energy(&iv(a + PI, b + PI)) - segment_energy(&iv(a, b))).abs() < 1e-14);
        assert!((normalized_energy(&iv(-PI, 0.0)) - D_REFERENCE * D_REFERENCE).abs() < 1e-13);
        let t = 0.4;
        let s = iv(-t, t);
        let expected = (4.0 * t.sin().powi(2) + 4.0 * xi(t).powi(2)).sqrt() * 2.0 * xi(t);
        assert_relative_eq!(normalized_energy(&s), expected, max_relative = 1e-13);
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(ParamInterval::new(1.0, 1.0).is_err());
        assert!(ParamInterval::new(0.3, 0.3 + 2.0 * PI).is_err());
        assert!(ParamInterval::new(2.0, 1.0).is_err());
    }

    #[test]
    fn canonical_representative() {
        let c = iv(5.0, 6.0).canonical();
        assert!((c.t1() - (5.0 - 2.0 * PI)).abs() < 1e-15);
        assert!(c.t1() >= -PI && c.t1() < PI);
        let c = iv(-PI, 0.0).canonical();
        assert_eq!(c.t1(), -PI);
    }

    #[test]
    fn jacobian_determinant_on_inflection_line() {
        for &t in &[0.3, 1.2, 2.5] {
            let s = iv(0.0, t);
            let seg = SegmentEval::new(&s);
            let expected =
                -(2.0 * t.sin() / (seg.length_sq() * (1.0 + t.sin().powi(2)).sqrt())) * seg.dxi;
            let det = jacobian_q(&s).det();
            assert!(det < 0.0);
            assert_relative_eq!(det, expected, max_relative = 1e-12);
        }
        assert!(jacobian_q(&iv(-PI, 0.0)).det().abs() < 1e-14);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let (t1, t2, h) = (-0.8, 0.6, 1e-6);
        let j = jacobian_q(&iv(t1, t2));
        let qa = |a: f64, b: f64| chord_angles(&iv(a, b));
        let d1p = qa(t1 + h, t2);
        let d1m = qa(t1 - h, t2);
        let d2p = qa(t1, t2 + h);
        let d2m = qa(t1, t2 - h);
        assert_relative_eq!(j.d_alpha_dt1, (d1p.alpha - d1m.alpha) / (2.0 * h), max_relative = 1e-6);
        assert_relative_eq!(j.d_beta_dt1, (d1p.beta - d1m.beta) / (2.0 * h), max_relative = 1e-6);
        assert_relative_eq!(j.d_alpha_dt2, (d2p.alpha - d2m.alpha) / (2.0 * h), max_relative = 1e-6);
        assert_relative_eq!(j.d_beta_dt2, (d2p.beta - d2m.beta) / (2.0 * h), max_relative = 1e-6);
    }

    #[test]
    fn w_examples() {
        assert!(w_function(&iv(-FRAC_PI_2, FRAC_PI_2)).unwrap() > 0.0);
        let t2 = 2.0;
        assert!(w_function(&iv(t2 - 1e-4, t2)).unwrap().abs() < 1e-2);
        assert_eq!(w_function(&iv(0.0, 1.0)), Err(ElasticaError::WUndefined));
        let c = constants::<f64>();
        assert!(w_function(&iv(-c.t_star, c.t_star)).unwrap().abs() <= 1e-10);
    }

    #[test]
    fn w_sign_agrees_with_determinant() {
        for &(a, b) in &[(-0.8, 0.6), (0.4, 2.1), (-2.9, -0.3), (-2.5, 2.6), (1.0, 3.5)] {
            let s = iv(a, b);
            let w = w_function(&s).unwrap();
            let det = jacobian_q(&s).det();
            assert_eq!((a.sin() * b.sin() * w).signum(), det.signum(), "({a}, {b})");
        }
    }

    #[test]
    fn constants_examples() {
        let c = constants::<f64>();
        assert!((c.psi.to_degrees() - 37.0).abs() <= 0.5);
        assert!(c.t_star > FRAC_PI_2 && c.t_star < PI);
        assert!(c.t_bar > 0.0 && c.t_bar < c.t_star);
        let beta = chord_angles(&iv(0.0, c.t_bar)).beta;
        assert!((beta - FRAC_PI_2).abs() <= 1e-10);
        assert!((c.psi + c.psi_bar - FRAC_PI_2).abs() < 1e-15);
        assert!((c.d - D_REFERENCE).abs() < 1e-14);
    }

    #[test]
    fn constants_in_single_precision() {
        let c = constants::<f32>();
        assert!((c.psi.to_degrees() - 37.09).abs() < 0.05);
        assert!((c.t_star - 2.733_475).abs() < 1e-4);
    }

    #[test]
    fn sqrt_sin_integral_reference() {
        // ∫₀^π √sin = 2√(2π) Γ(3/4) / Γ(1/4) = 2.396280469471184...
        let full = sqrt_sin_integral(PI);
        assert!((full - 2.396_280_469_471_184).abs() < 1e-13, "{full}");
        let half = sqrt_sin_integral(FRAC_PI_2);
        assert!((2.0 * half - full).abs() < 1e-14);
    }

    #[test]
    fn gamma_form_examples() {
        let g = gamma_form(FRAC_PI_2, FRAC_PI_2, -FRAC_PI_2).unwrap();
        assert!(g.sigma.abs() < 1e-14, "{}", g.sigma);
        let g = gamma_form(FRAC_PI_2, 0.3, -1e-4).unwrap();
        assert!((g.sigma - 1.0).abs() < 1e-3);
        assert!(g.y1 > 0.0 && g.y2 >= 0.0 && g.q > 0.0 && g.g > 0.0);
    }

    #[test]
    fn gamma_form_derivative_identity() {
        let (a, b, c, h) = (1.2, 0.4, -0.5, 1e-6);
        let gp = gamma_form(a, b, c + h).unwrap().g;
        let gm = gamma_form(a, b, c - h).unwrap().g;
        let at = gamma_form(a, b, c).unwrap();
        let fd = (gp - gm) / (2.0 * h);
        assert_relative_eq!(fd, at.sigma / (at.q * at.q), max_relative = 1e-6);
    }

    #[test]
    fn gamma_form_rejects_non_canonical() {
        assert!(gamma_form(-0.2, 0.1, -0.5).is_err());
        assert!(gamma_form(0.5, 0.7, -0.5).is_err());
        assert!(gamma_form(1.0, 0.5, 0.7).is_err());
        assert!(gamma_form(1.0, 0.5, 0.0).is_err());
    }
}
