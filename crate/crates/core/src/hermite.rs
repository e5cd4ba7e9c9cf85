//! Two-point geometric Hermite interpolation by optimal s-curves.
//!
//! For chord angles `(α, β) ∈ [−π/2, π/2]²` the optimal s-curve is a line
//! segment at the origin, the u-turn `R_[−π,0]` (or its mirror `R_[0,π]`)
//! at the two corners `±(π/2, −π/2)`, and otherwise the elastica segment
//! `R_[t₁,t₂]` with `Q(t₁, t₂) = (α, β)` and `(t₁, t₂)` in the region
//! `U = U₀ ∪ U₁ ∪ U₂ ∪ U₃`, mapped onto the chord by a direct similarity.
//!
//! `Q` is inverted by damped Newton steps on its analytic Jacobian, seeded
//! from a coarse forward-evaluated grid over `U`.

use num_complex::Complex;
use thiserror::Error;

use crate::angle::normalize_angle;
use crate::elastica::{
    chord_angles, constants, elastica_point, elastica_tangent, gamma_form,
    ChordAngles, ElasticaError, ParamInterval, SegmentEval,
};
use crate::quadrature::integrate;
use crate::roots::bisect;
use crate::scalar::{lit, tol, Real};

/// `|α| + |β|` at or below this is the straight-line case.
pub const ORIGIN_RADIUS: f64 = 1e-12;
/// Inputs this close to `±(π/2, −π/2)` use the closed-form u-turn.
pub const CORNER_RADIUS: f64 = 1e-9;
/// Slack accepted on the square boundary before an angle counts as outside.
pub const SQUARE_SLACK: f64 = 1e-12;

const SEED_GRID: usize = 64;
const MAX_NEWTON_ITERATIONS: usize = 50;
const MAX_RESEEDS: usize = 8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HermiteError {
    #[error("chord angles ({alpha}, {beta}): {reason}")]
    Domain {
        alpha: f64,
        beta: f64,
        reason: &'static str,
    },
    #[error("unit tangents share a base point")]
    CoincidentPoints,
    #[error("inversion of Q did not converge for ({alpha}, {beta}) after {attempts} seeds")]
    NoConvergence { alpha: f64, beta: f64, attempts: usize },
    #[error("gamma cross-check not applicable: {0}")]
    NotApplicable(String),
    #[error(transparent)]
    Elastica(#[from] ElasticaError),
}

fn domain<T: Real>(angles: ChordAngles<T>, reason: &'static str) -> HermiteError {
    HermiteError::Domain {
        alpha: angles.alpha.to_f64().unwrap_or(f64::NAN),
        beta: angles.beta.to_f64().unwrap_or(f64::NAN),
        reason,
    }
}

/// The four pieces of the injectivity region `U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// Right c-curves, `−π ≤ t₁ < t₂ ≤ 0`.
    U0,
    /// Right-left s-curves, `−t̄ ≤ t₁ < 0 < t₂ ≤ t̄`.
    U1,
    /// Left c-curves, `0 ≤ t₁ < t₂ ≤ π`.
    U2,
    /// Left-right s-curves, `π − t̄ ≤ t₁ < π < t₂ ≤ π + t̄`.
    U3,
}

fn classify<T: Real>(t1: T, t2: T, slack: T) -> Option<Region> {
    let pi = T::PI();
    let zero = T::zero();
    let t_bar = constants::<T>().t_bar;
    if t1 >= -pi - slack && t2 <= zero + slack && t1 < t2 {
        Some(Region::U0)
    } else if t1 >= -slack && t2 <= pi + slack && t1 < t2 {
        Some(Region::U2)
    } else if t1 >= -t_bar - slack && t1 < zero && t2 > zero && t2 <= t_bar + slack {
        Some(Region::U1)
    } else if t1 >= pi - t_bar - slack && t1 < pi && t2 > pi && t2 <= pi + t_bar + slack {
        Some(Region::U3)
    } else {
        None
    }
}

/// Which piece of `U` the interval falls in, up to the cylinder
/// identification and a `1e−9` boundary slack.
pub fn region_of<T: Real>(iv: &ParamInterval<T>) -> Option<Region> {
    let two_pi = T::PI() + T::PI();
    let slack = tol::<T>(1e-9);
    let c = iv.canonical();
    [c, c.shifted(two_pi), c.shifted(-two_pi)]
        .iter()
        .find_map(|cand| classify(cand.t1(), cand.t2(), slack))
}

#[derive(Debug, Clone, Copy)]
struct Seed<T> {
    iv: ParamInterval<T>,
    angles: ChordAngles<T>,
}

/// Forward evaluations of `Q` on a lattice over `U`, used to pick Newton
/// starting points.
#[doc(hidden)]
#[derive(Debug)]
pub struct SeedGrid<T> {
    seeds: Vec<Seed<T>>,
}

impl<T: Real> SeedGrid<T> {
    fn build() -> Self {
        let pi = T::PI();
        let t_bar = constants::<T>().t_bar;
        let n = lit::<T>(SEED_GRID as f64);
        let span1 = pi + pi;
        let span2 = pi + pi + t_bar;
        let mut seeds = Vec::with_capacity(SEED_GRID * SEED_GRID);
        for i in 0..SEED_GRID {
            let t1 = -pi + span1 * (lit::<T>(i as f64) + lit(0.5)) / n;
            for j in 0..SEED_GRID {
                let t2 = -pi + span2 * (lit::<T>(j as f64) + lit(0.5)) / n;
                if t2 <= t1 || classify(t1, t2, T::zero()).is_none() {
                    continue;
                }
                let iv = ParamInterval::new_unchecked(t1, t2);
                seeds.push(Seed {
                    iv,
                    angles: chord_angles(&iv),
                });
            }
        }
        Self { seeds }
    }

    fn nearest(&self, target: ChordAngles<T>, k: usize) -> Vec<ParamInterval<T>> {
        let mut scored: Vec<(T, ParamInterval<T>)> = self
            .seeds
            .iter()
            .map(|s| (s.angles.max_abs_diff(target), s.iv))
            .collect();
        let k = k.min(scored.len());
        if k == 0 {
            return Vec::new();
        }
        scored.select_nth_unstable_by(k - 1, |a, b| a.0.partial_cmp(&b.0).unwrap());
        scored.truncate(k);
        scored.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        scored.into_iter().map(|(_, iv)| iv).collect()
    }

    pub fn len(&self) -> usize {
        self.seeds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seeds.is_empty()
    }
}

#[doc(hidden)]
pub fn seed_grid<T: Real>() -> &'static SeedGrid<T> {
    T::tables().seeds.get_or_init(SeedGrid::build)
}

fn residual<T: Real>(at: ChordAngles<T>, target: ChordAngles<T>) -> (T, T) {
    (
        normalize_angle(at.alpha - target.alpha),
        normalize_angle(at.beta - target.beta),
    )
}

fn newton<T: Real>(
    target: ChordAngles<T>,
    start: ParamInterval<T>,
) -> Option<(ParamInterval<T>, usize)> {
    let converged = tol::<T>(1e-13);
    let stalled_ok = converged * lit(100.0);
    let max_step = lit::<T>(0.5);
    let two_pi = T::PI() + T::PI();
    let half = lit::<T>(0.5);

    let mut cur = start;
    let mut seg = SegmentEval::new(&cur);
    let mut res = residual(seg.angles(), target);
    let mut norm = res.0.abs().max(res.1.abs());
    for it in 0..MAX_NEWTON_ITERATIONS {
        if norm <= converged {
            return Some((polish(target, cur, norm), it));
        }
        let (mut d1, mut d2) = seg.jacobian().solve((-res.0, -res.1))?;
        let big = d1.abs().max(d2.abs());
        if big > max_step {
            d1 = d1 * max_step / big;
            d2 = d2 * max_step / big;
        }
        let mut lambda = T::one();
        let mut accepted = false;
        for _ in 0..40 {
            let t1 = cur.t1() + lambda * d1;
            let t2 = cur.t2() + lambda * d2;
            if t1 < t2 && t2 - t1 < two_pi {
                let cand = ParamInterval::new_unchecked(t1, t2);
                let cseg = SegmentEval::new(&cand);
                let cres = residual(cseg.angles(), target);
                let cnorm = cres.0.abs().max(cres.1.abs());
                if cnorm < norm {
                    cur = cand;
                    seg = cseg;
                    res = cres;
                    norm = cnorm;
                    accepted = true;
                    break;
                }
            }
            lambda = lambda * half;
        }
        if !accepted {
            return (norm <= stalled_ok).then_some((cur, it));
        }
    }
    (norm <= stalled_ok).then_some((cur, MAX_NEWTON_ITERATIONS))
}

/// One more full Newton step past the tolerance, kept only if it helps, so
/// energies computed from the result sit at rounding level.
fn polish<T: Real>(target: ChordAngles<T>, cur: ParamInterval<T>, norm: T) -> ParamInterval<T> {
    let seg = SegmentEval::new(&cur);
    let res = residual(seg.angles(), target);
    let Some((d1, d2)) = seg.jacobian().solve((-res.0, -res.1)) else {
        return cur;
    };
    let (t1, t2) = (cur.t1() + d1, cur.t2() + d2);
    if !(t1 < t2) {
        return cur;
    }
    let cand = ParamInterval::new_unchecked(t1, t2);
    let cres = residual(chord_angles(&cand), target);
    if cres.0.abs().max(cres.1.abs()) < norm {
        cand
    } else {
        cur
    }
}

fn check_square<T: Real>(angles: ChordAngles<T>) -> Result<ChordAngles<T>, HermiteError> {
    if !(angles.alpha.is_finite() && angles.beta.is_finite()) {
        return Err(domain(angles, "non-finite chord angles"));
    }
    if !angles.in_square(tol(SQUARE_SLACK)) {
        return Err(domain(angles, "outside the square [-π/2, π/2]²"));
    }
    let h = T::FRAC_PI_2();
    Ok(ChordAngles::new(
        angles.alpha.max(-h).min(h),
        angles.beta.max(-h).min(h),
    ))
}

fn is_origin<T: Real>(a: ChordAngles<T>) -> bool {
    a.alpha.abs() + a.beta.abs() <= tol(ORIGIN_RADIUS)
}

/// `Some(true)` near `(π/2, −π/2)`, `Some(false)` near `(−π/2, π/2)`.
fn corner<T: Real>(a: ChordAngles<T>) -> Option<bool> {
    let h = T::FRAC_PI_2();
    let r = tol::<T>(CORNER_RADIUS);
    if (a.alpha - h).abs() <= r && (a.beta + h).abs() <= r {
        Some(true)
    } else if (a.alpha + h).abs() <= r && (a.beta - h).abs() <= r {
        Some(false)
    } else {
        None
    }
}

fn corner_params<T: Real>(right_turn: bool) -> ParamInterval<T> {
    if right_turn {
        ParamInterval::new_unchecked(-T::PI(), T::zero())
    } else {
        ParamInterval::new_unchecked(T::zero(), T::PI())
    }
}

fn solve<T: Real>(
    target: ChordAngles<T>,
    hint: Option<&ParamInterval<T>>,
) -> Result<(ParamInterval<T>, usize), HermiteError> {
    if let Some(h) = hint {
        if let Some((iv, it)) = newton(target, *h) {
            if region_of(&iv).is_some() {
                return Ok((iv.canonical(), it));
            }
        }
    }
    let starts = seed_grid::<T>().nearest(target, MAX_RESEEDS + 1);
    for start in &starts {
        if let Some((iv, it)) = newton(target, *start) {
            if region_of(&iv).is_some() {
                return Ok((iv.canonical(), it));
            }
        }
    }
    Err(HermiteError::NoConvergence {
        alpha: target.alpha.to_f64().unwrap_or(f64::NAN),
        beta: target.beta.to_f64().unwrap_or(f64::NAN),
        attempts: starts.len() + usize::from(hint.is_some()),
    })
}

fn check_invertible<T: Real>(angles: ChordAngles<T>) -> Result<ChordAngles<T>, HermiteError> {
    let a = check_square(angles)?;
    if is_origin(a) {
        return Err(domain(a, "Q never attains (0, 0); the optimal curve is a line segment"));
    }
    if corner(a).is_some() {
        return Err(domain(a, "u-turn corner; use the closed-form u-turn"));
    }
    Ok(a)
}

/// The unique `(t₁, t₂) ∈ U` with `Q(t₁, t₂) = (α, β)`, reported with
/// `t₁ ∈ [−π, π)`.
pub fn invert_q<T: Real>(angles: ChordAngles<T>) -> Result<ParamInterval<T>, HermiteError> {
    let a = check_invertible(angles)?;
    solve(a, None).map(|s| s.0)
}

/// Like [`invert_q`], trying a Newton solve from `hint` before falling back
/// to the seed grid. Useful when `angles` moves continuously.
pub fn invert_q_near<T: Real>(
    angles: ChordAngles<T>,
    hint: &ParamInterval<T>,
) -> Result<ParamInterval<T>, HermiteError> {
    let a = check_invertible(angles)?;
    solve(a, Some(hint)).map(|s| s.0)
}

/// Energy and gradient of `E₁` at one point, with the parameters used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct E1Eval<T> {
    pub energy: T,
    pub grad: (T, T),
    pub params: Option<ParamInterval<T>>,
}

/// Evaluates `E₁` and `∇E₁`, using the one-sided limit `∇E₁ = 0` at the
/// u-turn corners (the curvature vanishes at both ends there).
pub(crate) fn evaluate_e1<T: Real>(
    angles: ChordAngles<T>,
    hint: Option<&ParamInterval<T>>,
) -> Result<E1Eval<T>, HermiteError> {
    let a = check_square(angles)?;
    if is_origin(a) {
        return Ok(E1Eval {
            energy: T::zero(),
            grad: (T::zero(), T::zero()),
            params: None,
        });
    }
    if let Some(right) = corner(a) {
        let d = constants::<T>().d;
        return Ok(E1Eval {
            energy: d * d,
            grad: (T::zero(), T::zero()),
            params: Some(corner_params(right)),
        });
    }
    let (iv, _) = solve(a, hint)?;
    let seg = SegmentEval::new(&iv);
    let l = seg.length();
    Ok(E1Eval {
        energy: l * seg.dxi,
        grad: (-l * seg.s1, l * seg.s2),
        params: Some(iv),
    })
}

/// Bending energy `E₁(α, β)` of the optimal s-curve with unit breadth.
pub fn energy_e1<T: Real>(angles: ChordAngles<T>) -> Result<T, HermiteError> {
    evaluate_e1(angles, None).map(|e| e.energy)
}

/// `∇E₁ = ½(−κ_a, κ_b) = (−l sin t₁, l sin t₂)`.
///
/// Undefined at the u-turn corners, where `E₁` is not differentiable in
/// the usual sense; those return [`HermiteError::Domain`].
pub fn grad_e1<T: Real>(angles: ChordAngles<T>) -> Result<(T, T), HermiteError> {
    let a = check_square(angles)?;
    if corner(a).is_some() {
        return Err(domain(a, "gradient undefined at a u-turn corner"));
    }
    evaluate_e1(a, None).map(|e| e.grad)
}

/// The unique `β*` with `sign ∂E₁/∂β (α, β) = sign(β − β*)`.
pub fn beta_star<T: Real>(alpha: T) -> Result<T, HermiteError> {
    let h = T::FRAC_PI_2();
    if !(alpha.abs() <= h + tol::<T>(SQUARE_SLACK)) {
        return Err(domain(ChordAngles::new(alpha, T::zero()), "alpha outside [-π/2, π/2]"));
    }
    let alpha = alpha.max(-h).min(h);
    if alpha == T::zero() {
        return Ok(T::zero());
    }
    if alpha < T::zero() {
        return beta_star(-alpha).map(|b| -b);
    }
    let lo = -h + lit(1e-6);
    let hi = alpha.min(h);
    let mut failure = None;
    let mut hint: Option<ParamInterval<T>> = None;
    let root = bisect(
        |beta| match evaluate_e1(ChordAngles::new(alpha, beta), hint.as_ref()) {
            Ok(e) => {
                hint = e.params;
                e.grad.1
            }
            Err(err) => {
                failure = Some(err);
                T::nan()
            }
        },
        lo,
        hi,
        tol::<T>(1e-14),
    );
    if let Some(err) = failure {
        return Err(err);
    }
    root.ok_or_else(|| domain(ChordAngles::new(alpha, T::zero()), "no sign change of ∂E₁/∂β"))
}

/// Result of checking a Hermite solution against the γ-form minimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteDiagnostics<T> {
    pub gamma_hat: T,
    pub sigma_residual: T,
    pub g_gamma_value: T,
    pub energy: T,
    pub newton_iterations: usize,
    pub region: Region,
}

/// Maps `(α, β)` by reversal and reflection onto `α ≥ |β|`. Returns the
/// reduced angles and whether a swap and/or a negation was applied.
pub fn canonical_reduction<T: Real>(angles: ChordAngles<T>) -> (ChordAngles<T>, bool, bool) {
    let mut a = angles;
    let swapped = a.beta.abs() > a.alpha.abs();
    if swapped {
        a = a.swapped();
    }
    let negated = a.alpha < T::zero();
    if negated {
        a = a.negated();
    }
    (a, swapped, negated)
}

/// Cross-checks the Newton solution for `angles` against the γ-form:
/// `γ̂ = α − arg R'(t₁)` must be a zero of `σ` with `G(γ̂) = E₁(α, β)`.
///
/// Applies only when the optimal curve of the reduced angles is a
/// right-left s-curve (`t₁ < 0 < t₂`); c-curve solutions are
/// [`HermiteError::NotApplicable`].
pub fn cross_check_gamma<T: Real>(
    angles: ChordAngles<T>,
) -> Result<HermiteDiagnostics<T>, HermiteError> {
    let (reduced, _, _) = canonical_reduction(check_square(angles)?);
    if is_origin(reduced) || corner(reduced).is_some() {
        return Err(HermiteError::NotApplicable(
            "line segment and u-turn cases have no γ-form".into(),
        ));
    }
    let (iv, iterations) = solve(reduced, None)?;
    let region = region_of(&iv).expect("solve returns parameters in U");
    if !(iv.t1() < T::zero() && iv.t2() > T::zero() && iv.t2() < T::PI()) {
        return Err(HermiteError::NotApplicable(format!(
            "optimal curve is a c-curve (region {region:?})"
        )));
    }
    let gamma_hat = reduced.alpha - elastica_tangent(iv.t1()).direction;
    let gf = gamma_form(reduced.alpha, reduced.beta, gamma_hat)
        .map_err(|e| HermiteError::NotApplicable(e.to_string()))?;
    let seg = SegmentEval::new(&iv);
    Ok(HermiteDiagnostics {
        gamma_hat,
        sigma_residual: gf.sigma,
        g_gamma_value: gf.g,
        energy: seg.length() * seg.dxi,
        newton_iterations: iterations,
        region,
    })
}

/// A point with a unit tangent direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitTangent<T> {
    pub base: Complex<T>,
    /// Direction angle in `(−π, π]`.
    pub direction: T,
}

impl<T: Real> UnitTangent<T> {
    pub fn new(base: Complex<T>, direction: T) -> Self {
        Self {
            base,
            direction: normalize_angle(direction),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SCurveKind {
    LineSegment,
    ElasticaArc,
    UTurnArc,
}

impl SCurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SCurveKind::LineSegment => "line",
            SCurveKind::ElasticaArc => "elastica",
            SCurveKind::UTurnArc => "uturn",
        }
    }
}

/// One optimal piece between two unit tangents.
///
/// Arcs are `z(t) = scale·e^{i·rotation}·R(t) + translation` for
/// `t ∈ [t₁, t₂]`; line segments are `z(s) = translation + scale·e^{i·rotation}·s`
/// for `s ∈ [0, 1]`. Curvatures are in the plane's units (1/length).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SCurve<T> {
    pub kind: SCurveKind,
    pub params: Option<ParamInterval<T>>,
    pub scale: T,
    pub rotation: T,
    pub translation: Complex<T>,
    pub breadth: T,
    pub energy: T,
    pub kappa_start: T,
    pub kappa_end: T,
    pub angles: ChordAngles<T>,
    pub start: Complex<T>,
    pub end: Complex<T>,
}

impl<T: Real> SCurve<T> {
    fn multiplier(&self) -> Complex<T> {
        Complex::from_polar(self.scale, self.rotation)
    }

    /// Parameter range: `(t₁, t₂)` for arcs, `(0, 1)` for lines.
    pub fn param_range(&self) -> (T, T) {
        match self.params {
            Some(p) => (p.t1(), p.t2()),
            None => (T::zero(), T::one()),
        }
    }

    pub fn point_at(&self, t: T) -> Complex<T> {
        match self.params {
            Some(_) => self.multiplier() * elastica_point(t) + self.translation,
            None => self.translation + self.multiplier() * t,
        }
    }

    /// Tangent direction in `(−π, π]`.
    pub fn direction_at(&self, t: T) -> T {
        match self.params {
            Some(_) => normalize_angle(self.rotation + elastica_tangent(t).direction),
            None => self.rotation,
        }
    }

    pub fn curvature_at(&self, t: T) -> T {
        match self.params {
            Some(_) => lit::<T>(2.0) * t.sin() / self.scale,
            None => T::zero(),
        }
    }

    /// Arclength per unit parameter.
    pub fn speed_at(&self, t: T) -> T {
        match self.params {
            Some(_) => self.scale / (T::one() + t.sin().powi(2)).sqrt(),
            None => self.scale,
        }
    }

    pub fn arclength(&self) -> T {
        match self.params {
            Some(p) => {
                let panels = (lit::<T>(8.0) * p.width() / T::PI())
                    .ceil()
                    .to_usize()
                    .unwrap_or(8)
                    .max(1);
                integrate(|t| self.speed_at(t), p.t1(), p.t2(), panels)
            }
            None => self.scale,
        }
    }

    /// The same geometric curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let pi = T::PI();
        let base = Self {
            angles: self.angles.swapped(),
            start: self.end,
            end: self.start,
            kappa_start: -self.kappa_end,
            kappa_end: -self.kappa_start,
            ..*self
        };
        match self.params {
            None => Self {
                rotation: normalize_angle(self.rotation + pi),
                translation: self.end,
                ..base
            },
            Some(p) => {
                // R(−t) = −R(t): negate the multiplier and the parameters.
                let flipped = ParamInterval::new_unchecked(-p.t2(), -p.t1());
                let rotation = normalize_angle(self.rotation + pi);
                let (params, translation) =
                    recenter(flipped, Complex::from_polar(self.scale, rotation), self.translation);
                Self {
                    params: Some(params),
                    rotation,
                    translation,
                    ..base
                }
            }
        }
    }
}

/// Moves `params` to its canonical cylinder representative, compensating the
/// translation for the `2d` rise per period.
fn recenter<T: Real>(
    params: ParamInterval<T>,
    multiplier: Complex<T>,
    translation: Complex<T>,
) -> (ParamInterval<T>, Complex<T>) {
    let canon = params.canonical();
    let two_pi = T::PI() + T::PI();
    let periods = ((canon.t1() - params.t1()) / two_pi).round();
    if periods == T::zero() {
        return (params, translation);
    }
    let d = constants::<T>().d;
    let rise = Complex::new(T::zero(), lit::<T>(2.0) * d * periods);
    (canon, translation - multiplier * rise)
}

fn arc_between<T: Real>(
    kind: SCurveKind,
    params: ParamInterval<T>,
    p1: Complex<T>,
    p2: Complex<T>,
    angles: ChordAngles<T>,
) -> SCurve<T> {
    let seg = SegmentEval::new(&params);
    let chord = p2 - p1;
    let breadth = chord.norm();
    let multiplier = chord / seg.chord();
    let translation = p1 - multiplier * elastica_point(params.t1());
    let l = seg.length();
    let two = lit::<T>(2.0);
    SCurve {
        kind,
        params: Some(params),
        scale: multiplier.norm(),
        rotation: multiplier.arg(),
        translation,
        breadth,
        energy: l * seg.dxi / breadth,
        kappa_start: two * l * seg.s1 / breadth,
        kappa_end: two * l * seg.s2 / breadth,
        angles,
        start: p1,
        end: p2,
    }
}

fn line_between<T: Real>(p1: Complex<T>, p2: Complex<T>, angles: ChordAngles<T>) -> SCurve<T> {
    let chord = p2 - p1;
    SCurve {
        kind: SCurveKind::LineSegment,
        params: None,
        scale: chord.norm(),
        rotation: chord.arg(),
        translation: p1,
        breadth: chord.norm(),
        energy: T::zero(),
        kappa_start: T::zero(),
        kappa_end: T::zero(),
        angles,
        start: p1,
        end: p2,
    }
}

/// Chord angles of the configuration `(u, v)`.
pub fn configuration_angles<T: Real>(
    u: &UnitTangent<T>,
    v: &UnitTangent<T>,
) -> Result<ChordAngles<T>, HermiteError> {
    let chord = v.base - u.base;
    let breadth = chord.norm();
    if !(breadth > T::zero()) || !breadth.is_finite() {
        return Err(HermiteError::CoincidentPoints);
    }
    let phi = chord.arg();
    Ok(ChordAngles::new(
        normalize_angle(u.direction - phi),
        normalize_angle(v.direction - phi),
    ))
}

/// The optimal s-curve `c(u, v)` connecting `u` to `v`.
pub fn optimal_scurve<T: Real>(
    u: &UnitTangent<T>,
    v: &UnitTangent<T>,
) -> Result<SCurve<T>, HermiteError> {
    optimal_scurve_near(u, v, None)
}

/// [`optimal_scurve`] with an optional warm start for the inversion.
pub fn optimal_scurve_near<T: Real>(
    u: &UnitTangent<T>,
    v: &UnitTangent<T>,
    hint: Option<&ParamInterval<T>>,
) -> Result<SCurve<T>, HermiteError> {
    let angles = check_square(configuration_angles(u, v)?)?;
    if is_origin(angles) {
        return Ok(line_between(u.base, v.base, angles));
    }
    if let Some(right) = corner(angles) {
        return Ok(arc_between(
            SCurveKind::UTurnArc,
            corner_params(right),
            u.base,
            v.base,
            angles,
        ));
    }
    let (params, _) = solve(angles, hint)?;
    Ok(arc_between(
        SCurveKind::ElasticaArc,
        params,
        u.base,
        v.base,
        angles,
    ))
}

/// Unit-breadth optimal s-curve `c₁(α, β)` from `0` to `1`.
pub fn unit_scurve<T: Real>(angles: ChordAngles<T>) -> Result<SCurve<T>, HermiteError> {
    let u = UnitTangent::new(Complex::new(T::zero(), T::zero()), angles.alpha);
    let v = UnitTangent::new(Complex::new(T::one(), T::zero()), angles.beta);
    optimal_scurve(&u, &v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn ca(a: f64, b: f64) -> ChordAngles<f64> {
        ChordAngles::new(a, b)
    }

    fn ut(x: f64, y: f64, dir: f64) -> UnitTangent<f64> {
        UnitTangent::new(Complex::new(x, y), dir)
    }

    #[test]
    fn seed_grid_is_populated() {
        let g = seed_grid::<f64>();
        assert!(g.len() > 1000, "{}", g.len());
    }

    #[test]
    fn round_trip_from_forward_map() {
        let iv = ParamInterval::new(-0.9f64, 0.4).unwrap();
        let got: ParamInterval<f64> = invert_q(chord_angles(&iv)).unwrap();
        assert!((got.t1() + 0.9).abs() < 1e-10 && (got.t2() - 0.4).abs() < 1e-10, "{got:?}");
    }

    #[test]
    fn inversion_rejects_origin_and_corners() {
        assert!(matches!(invert_q(ca(0.0, 0.0)), Err(HermiteError::Domain { .. })));
        assert!(matches!(invert_q(ca(FRAC_PI_2, -FRAC_PI_2)), Err(HermiteError::Domain { .. })));
        assert!(matches!(invert_q(ca(2.0, 0.0)), Err(HermiteError::Domain { .. })));
    }

    #[test]
    fn inversion_of_tiny_angles() {
        for &(a, b) in &[(1e-6, 2e-6), (-3e-7, 1e-7), (1e-9, -1e-9)] {
            let iv = invert_q(ca(a, b)).unwrap();
            let q = chord_angles(&iv);
            assert!(q.max_abs_diff(ca(a, b)) < 1e-12, "{a} {b} -> {q:?}");
        }
    }

    #[test]
    fn inversion_near_square_corners() {
        let c = constants::<f64>();
        let iv = invert_q(ca(FRAC_PI_2, FRAC_PI_2)).unwrap();
        assert!((iv.t1() + c.t_bar).abs() < 1e-9 && (iv.t2() - c.t_bar).abs() < 1e-9);
        let iv = invert_q(ca(-FRAC_PI_2, -FRAC_PI_2)).unwrap();
        assert_eq!(region_of(&iv), Some(Region::U3));
        for eps in [1e-3, 1e-5, 1e-7] {
            let target = ca(FRAC_PI_2 - eps, -FRAC_PI_2 + eps / 2.0);
            let iv = invert_q(target).unwrap();
            assert!(chord_angles(&iv).max_abs_diff(target) < 1e-10);
        }
    }

    #[test]
    fn line_segment_case() {
        let s = optimal_scurve(&ut(0.0, 0.0, 0.0), &ut(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(s.kind, SCurveKind::LineSegment);
        assert_eq!(s.energy, 0.0);
        assert_eq!((s.kappa_start, s.kappa_end), (0.0, 0.0));
    }

    #[test]
    fn u_turn_case() {
        let d = constants::<f64>().d;
        let s = optimal_scurve(&ut(0.0, 0.0, FRAC_PI_2), &ut(1.0, 0.0, -FRAC_PI_2)).unwrap();
        assert_eq!(s.kind, SCurveKind::UTurnArc);
        assert!((s.energy - d * d).abs() < 1e-12);
        let p = s.params.unwrap();
        assert_eq!((p.t1(), p.t2()), (-PI, 0.0));
        let m = optimal_scurve(&ut(0.0, 0.0, -FRAC_PI_2), &ut(1.0, 0.0, FRAC_PI_2)).unwrap();
        let p = m.params.unwrap();
        assert_eq!((p.t1(), p.t2()), (0.0, PI));
    }

    #[test]
    fn symmetric_arc() {
        let s = unit_scurve(ca(0.6, 0.6)).unwrap();
        let p = s.params.unwrap();
        assert!((p.t1() + p.t2()).abs() < 1e-10);
        assert_relative_eq!(s.kappa_start, -s.kappa_end, max_relative = 1e-10);
    }

    #[test]
    fn arc_reproduces_configuration() {
        let u = ut(0.3, -1.0, 0.9);
        let v = ut(2.5, 0.7, -0.2);
        let s = optimal_scurve(&u, &v).unwrap();
        let (t1, t2) = s.param_range();
        assert!((s.point_at(t1) - u.base).norm() < 1e-12);
        assert!((s.point_at(t2) - v.base).norm() < 1e-12);
        assert!(normalize_angle(s.direction_at(t1) - u.direction).abs() < 1e-10);
        assert!(normalize_angle(s.direction_at(t2) - v.direction).abs() < 1e-10);
        let e1 = energy_e1(s.angles).unwrap();
        assert_relative_eq!(s.energy, e1 / s.breadth, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_configurations() {
        assert_eq!(
            optimal_scurve(&ut(1.0, 1.0, 0.0), &ut(1.0, 1.0, 0.3)),
            Err(HermiteError::CoincidentPoints)
        );
        assert!(matches!(
            optimal_scurve(&ut(0.0, 0.0, 2.0), &ut(1.0, 0.0, 0.0)),
            Err(HermiteError::Domain { .. })
        ));
    }

    #[test]
    fn energy_examples() {
        let d = constants::<f64>().d;
        assert_eq!(energy_e1(ca(0.0, 0.0)).unwrap(), 0.0);
        assert!((energy_e1(ca(FRAC_PI_2, -FRAC_PI_2)).unwrap() - d * d).abs() < 1e-12);
        let e = energy_e1(ca(0.5, -0.2)).unwrap();
        assert!((energy_e1(ca(-0.2, 0.5)).unwrap() - e).abs() < 1e-10);
        assert!((energy_e1(ca(-0.5, 0.2)).unwrap() - e).abs() < 1e-10);
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(grad_e1(ca(0.0, 0.0)).unwrap(), (0.0, 0.0));
        assert!(grad_e1(ca(FRAC_PI_2, -FRAC_PI_2)).is_err());
        let (a, b, h) = (0.7, 0.1, 1e-5);
        let g = grad_e1(ca(a, b)).unwrap();
        let fa = (energy_e1(ca(a + h, b)).unwrap() - energy_e1(ca(a - h, b)).unwrap()) / (2.0 * h);
        let fb = (energy_e1(ca(a, b + h)).unwrap() - energy_e1(ca(a, b - h)).unwrap()) / (2.0 * h);
        assert_relative_eq!(g.0, fa, max_relative = 1e-5);
        assert_relative_eq!(g.1, fb, max_relative = 1e-5);
    }

    #[test]
    fn beta_star_is_a_gradient_zero() {
        let alpha = 0.9;
        // Independent route: find t with α(−t, 0) = α, then β* = β(−t, 0).
        let t_bar = constants::<f64>().t_bar;
        let t_alpha = crate::roots::bisect(
            |t| chord_angles(&ParamInterval::new(-t, 0.0).unwrap()).alpha - alpha,
            1e-3,
            t_bar,
            0.0,
        )
        .unwrap();
        let expected = chord_angles(&ParamInterval::new(-t_alpha, 0.0).unwrap()).beta;
        let got = beta_star(alpha).unwrap();
        assert!((got - expected).abs() < 1e-10, "{got} vs {expected}");
        assert!(grad_e1(ca(alpha, expected)).unwrap().1.abs() < 1e-9);
        assert_eq!(beta_star(0.0).unwrap(), 0.0);
        assert!((beta_star(-alpha).unwrap() + got).abs() < 1e-14);
    }

    #[test]
    fn gamma_cross_check_examples() {
        let d = cross_check_gamma(ca(1.2, 0.3)).unwrap();
        assert!(d.sigma_residual.abs() <= 1e-8, "{d:?}");
        assert!((d.g_gamma_value - d.energy).abs() <= 1e-8 * d.energy.max(1.0));
        let d = cross_check_gamma(ca(0.5, 0.5)).unwrap();
        assert!(d.gamma_hat > -FRAC_PI_2 && d.gamma_hat < 0.0);
        assert!(matches!(cross_check_gamma(ca(0.0, 0.0)), Err(HermiteError::NotApplicable(_))));
    }

    #[test]
    fn reversed_curve_is_same_geometry() {
        let s = optimal_scurve(&ut(0.0, 0.0, 0.4), &ut(3.0, 1.0, 1.3)).unwrap();
        let r = s.reversed();
        let (a, b) = s.param_range();
        let (ra, rb) = r.param_range();
        assert!((r.point_at(ra) - s.point_at(b)).norm() < 1e-12);
        assert!((r.point_at(rb) - s.point_at(a)).norm() < 1e-12);
        let mid = s.point_at(0.5 * (a + b));
        let rmid = r.point_at(0.5 * (ra + rb));
        assert!((mid - rmid).norm() < 1e-12);
        assert_relative_eq!(r.curvature_at(ra), -s.kappa_end, max_relative = 1e-10);
        let u = optimal_scurve(&ut(0.0, 0.0, FRAC_PI_2), &ut(1.0, 0.0, -FRAC_PI_2)).unwrap();
        let ur = u.reversed();
        let p = ur.params.unwrap();
        assert_eq!((p.t1(), p.t2()), (0.0, PI));
    }

    #[test]
    fn single_precision_round_trip() {
        let target = ChordAngles::new(0.7f32, -0.3f32);
        let iv = invert_q(target).unwrap();
        assert!(chord_angles(&iv).max_abs_diff(target) < 1e-4);
        let e64 = energy_e1(ca(0.7, -0.3)).unwrap();
        let e32 = energy_e1(target).unwrap();
        assert!((e32 as f64 - e64).abs() < 1e-4 * e64.max(1.0));
    }
}
