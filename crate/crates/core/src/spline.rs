//! Restricted elastic splines: interpolating curves built from optimal
//! s-curves whose chord angles stay in `[−π/2, π/2]`, with node tangents
//! chosen to minimize the total bending energy.
//!
//! With chord directions `φ_j` and lengths `L_j`, the tangent angle `θ_j`
//! at node `j` gives segment `j` the chord angles
//! `α_j = θ_j − φ_j`, `β_{j+1} = θ_{j+1} − φ_j`, and the total energy is
//! `Σ E₁(α_j, β_{j+1}) / L_j`. The optimizer runs cyclic coordinate descent
//! over the free `θ_j`, each restricted to its feasible interval.

use num_complex::Complex;
use thiserror::Error;

use crate::angle::normalize_angle;
use crate::elastica::{constants, ChordAngles, ParamInterval};
use crate::hermite::{evaluate_e1, optimal_scurve_near, HermiteError, SCurve, UnitTangent};
use crate::scalar::{lit, tol, Real};

/// Distance kept from the ends of a feasible interval during line searches.
pub const FEASIBILITY_GUARD: f64 = 1e-12;
/// Relative curvature jump accepted as G² at a node.
pub const CURVATURE_JUMP_TOL: f64 = 1e-6;

/// Relative accuracy of an energy evaluation; comparisons closer than this
/// are treated as ties when checking descent.
const ENERGY_NOISE: f64 = 1e-12;
const GOLDEN_SHRINK: f64 = 1e-4;
const MAX_REFINE_ITERATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SplineError {
    #[error("a spline needs at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} is not finite")]
    NonFinite { index: usize },
    #[error("points {index} and {next} coincide", next = index + 1)]
    CoincidentPoints { index: usize },
    #[error("chords meeting at node {index} are anti-parallel; no feasible tangent")]
    EmptyFeasible { index: usize },
    #[error("tangent {theta} rad at node {index} is outside its feasible interval")]
    InfeasibleTangent { index: usize, theta: f64 },
    #[error("energy rose from {before} to {after} in sweep {sweep}")]
    DescentViolated { sweep: usize, before: f64, after: f64 },
    #[error(transparent)]
    Hermite(#[from] HermiteError),
}

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EndpointMode<T> {
    /// End tangents are optimized like interior ones.
    Free,
    /// End tangent directions fixed, in radians.
    Clamped { first: T, last: T },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Stop once no tangent moves more than this in a sweep.
    pub angle_tol: T,
    pub max_sweeps: usize,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            angle_tol: tol(1e-10),
            max_sweeps: 500,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplineProblem<T> {
    pub points: Vec<Complex<T>>,
    pub endpoint_mode: EndpointMode<T>,
    pub tolerances: Tolerances<T>,
}

impl<T: Real> SplineProblem<T> {
    /// Validates the points and uses default tolerances.
    pub fn new(points: Vec<Complex<T>>, endpoint_mode: EndpointMode<T>) -> Result<Self, SplineError> {
        chord_geometry(&points)?;
        Ok(Self {
            points,
            endpoint_mode,
            tolerances: Tolerances::default(),
        })
    }

    pub fn with_tolerances(mut self, tolerances: Tolerances<T>) -> Self {
        self.tolerances = tolerances;
        self
    }
}

/// A closed arc of directions `[center − half_width, center + half_width]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleInterval<T> {
    pub center: T,
    pub half_width: T,
}

impl<T: Real> AngleInterval<T> {
    pub fn lo(&self) -> T {
        self.center - self.half_width
    }

    pub fn hi(&self) -> T {
        self.center + self.half_width
    }

    pub fn width(&self) -> T {
        self.half_width + self.half_width
    }

    /// Whether direction `theta` lies in the arc, within `slack`.
    pub fn contains(&self, theta: T, slack: T) -> bool {
        normalize_angle(theta - self.center).abs() <= self.half_width + slack
    }

    /// Representative of `theta` closest to `center`, clamped into the arc.
    pub fn clamp(&self, theta: T) -> T {
        let off = normalize_angle(theta - self.center);
        self.center + off.max(-self.half_width).min(self.half_width)
    }
}

/// Optimizer state: one tangent per node plus the fixed chord geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeState<T> {
    pub theta: Vec<T>,
    /// Direction `φ_j` of `P_{j+1} − P_j`.
    pub chord_dirs: Vec<T>,
    pub chord_lengths: Vec<T>,
    /// `ψ_j` for the interior nodes `1..m−1`, in node order.
    pub stencil: Vec<T>,
}

impl<T: Real> NodeState<T> {
    pub fn node_count(&self) -> usize {
        self.theta.len()
    }

    /// Chord angles `(α_j, β_{j+1})` of segment `j`.
    pub fn segment_angles(&self, j: usize) -> ChordAngles<T> {
        let phi = self.chord_dirs[j];
        ChordAngles::new(
            normalize_angle(self.theta[j] - phi),
            normalize_angle(self.theta[j + 1] - phi),
        )
    }

    /// `ψ_j` at node `j`, or `None` at the two ends.
    pub fn stencil_at(&self, j: usize) -> Option<T> {
        (j > 0 && j + 1 < self.node_count()).then(|| self.stencil[j - 1])
    }
}

fn chord_geometry<T: Real>(points: &[Complex<T>]) -> Result<(Vec<T>, Vec<T>), SplineError> {
    if points.len() < 2 {
        return Err(SplineError::TooFewPoints(points.len()));
    }
    if let Some(index) = points.iter().position(|p| !(p.re.is_finite() && p.im.is_finite())) {
        return Err(SplineError::NonFinite { index });
    }
    let mut dirs = Vec::with_capacity(points.len() - 1);
    let mut lens = Vec::with_capacity(points.len() - 1);
    for (index, w) in points.windows(2).enumerate() {
        let chord = w[1] - w[0];
        let len = chord.norm();
        if !(len > T::zero()) {
            return Err(SplineError::CoincidentPoints { index });
        }
        dirs.push(chord.arg());
        lens.push(len);
    }
    Ok((dirs, lens))
}

fn stencil_from_dirs<T: Real>(dirs: &[T]) -> Vec<T> {
    dirs.windows(2).map(|w| normalize_angle(w[1] - w[0])).collect()
}

/// Turning angles `ψ_j = arg (P_{j+1}−P_j)/(P_j−P_{j−1})` at the interior nodes.
pub fn stencil_angles<T: Real>(points: &[Complex<T>]) -> Result<Vec<T>, SplineError> {
    Ok(stencil_from_dirs(&chord_geometry(points)?.0))
}

/// Directions at node `j` that keep both adjacent chord angles in
/// `[−π/2, π/2]`.
pub fn feasible_tangent_interval<T: Real>(
    j: usize,
    state: &NodeState<T>,
) -> Result<AngleInterval<T>, SplineError> {
    let m = state.node_count();
    let h = T::FRAC_PI_2();
    if j == 0 {
        return Ok(AngleInterval {
            center: state.chord_dirs[0],
            half_width: h,
        });
    }
    if j + 1 == m {
        return Ok(AngleInterval {
            center: state.chord_dirs[m - 2],
            half_width: h,
        });
    }
    let psi = state.stencil[j - 1];
    if psi.abs() >= T::PI() {
        return Err(SplineError::EmptyFeasible { index: j });
    }
    Ok(AngleInterval {
        center: state.chord_dirs[j - 1] + psi * lit(0.5),
        half_width: (T::PI() - psi.abs()) * lit(0.5),
    })
}

/// Starting tangents: chord bisectors at interior nodes, chord directions
/// (or the clamp values) at the ends.
pub fn initialize_tangents<T: Real>(
    points: &[Complex<T>],
    endpoint_mode: EndpointMode<T>,
) -> Result<NodeState<T>, SplineError> {
    let (chord_dirs, chord_lengths) = chord_geometry(points)?;
    let m = points.len();
    let stencil = stencil_from_dirs(&chord_dirs);
    let mut state = NodeState {
        theta: vec![T::zero(); m],
        chord_dirs,
        chord_lengths,
        stencil,
    };
    for j in 1..m - 1 {
        let interval = feasible_tangent_interval(j, &state)?;
        let (a, b) = (
            Complex::from_polar(T::one(), state.chord_dirs[j - 1]),
            Complex::from_polar(T::one(), state.chord_dirs[j]),
        );
        state.theta[j] = interval.clamp((a + b).arg());
    }
    match endpoint_mode {
        EndpointMode::Free => {
            state.theta[0] = state.chord_dirs[0];
            state.theta[m - 1] = state.chord_dirs[m - 2];
        }
        EndpointMode::Clamped { first, last } => {
            let slack = tol::<T>(1e-12);
            for (index, theta) in [(0, first), (m - 1, last)] {
                let interval = feasible_tangent_interval(index, &state)?;
                if !theta.is_finite() || !interval.contains(theta, slack) {
                    return Err(SplineError::InfeasibleTangent {
                        index,
                        theta: f64_of(theta),
                    });
                }
                state.theta[index] = if interval.contains(theta, T::zero()) {
                    theta
                } else {
                    interval.clamp(theta)
                };
            }
        }
    }
    Ok(state)
}

/// `Σ_j E₁(α_j, β_{j+1}) / L_j` for the tangents in `state`.
pub fn total_energy<T: Real>(points: &[Complex<T>], state: &NodeState<T>) -> Result<T, SplineError> {
    let (_, lens) = chord_geometry(points)?;
    let mut total = T::zero();
    for (j, len) in lens.iter().enumerate() {
        let e = evaluate_e1(state.segment_angles(j), None)?;
        total = total + e.energy / *len;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplineSolution<T> {
    pub segments: Vec<SCurve<T>>,
    pub node_states: NodeState<T>,
    pub total_energy: T,
    pub sweeps_used: usize,
    pub converged: bool,
    /// Total energy before the first sweep and after each sweep.
    pub energy_history: Vec<T>,
}

/// Energy and `∂/∂θ_j` restricted to the segments touching one node.
#[derive(Debug, Clone, Copy)]
struct Local<T> {
    energy: T,
    slope: T,
}

struct Optimizer<T> {
    state: NodeState<T>,
    hints: Vec<Option<ParamInterval<T>>>,
    free: Vec<bool>,
    bounds: Vec<(T, T)>,
}

impl<T: Real> Optimizer<T> {
    fn new(problem: &SplineProblem<T>) -> Result<Self, SplineError> {
        let state = initialize_tangents(&problem.points, problem.endpoint_mode)?;
        let m = state.node_count();
        let clamped = matches!(problem.endpoint_mode, EndpointMode::Clamped { .. });
        let guard = tol::<T>(FEASIBILITY_GUARD);
        let mut bounds = Vec::with_capacity(m);
        for j in 0..m {
            let iv = feasible_tangent_interval(j, &state)?;
            let (lo, hi) = (iv.lo() + guard, iv.hi() - guard);
            bounds.push(if lo <= hi {
                (lo, hi)
            } else {
                (iv.center, iv.center)
            });
        }
        let mut opt = Self {
            hints: vec![None; m - 1],
            free: (0..m).map(|j| !(clamped && (j == 0 || j + 1 == m))).collect(),
            bounds,
            state,
        };
        // Interior tangents are stored as the representative nearest their
        // interval so the line searches work on a plain real interval.
        for j in 0..m {
            if opt.free[j] {
                let (lo, hi) = opt.bounds[j];
                let center = (lo + hi) * lit(0.5);
                let t = center + normalize_angle(opt.state.theta[j] - center);
                opt.state.theta[j] = t.max(lo).min(hi);
            }
        }
        Ok(opt)
    }

    fn segment(&mut self, seg: usize, theta_a: T, theta_b: T) -> Result<(T, (T, T)), SplineError> {
        let phi = self.state.chord_dirs[seg];
        let angles = ChordAngles::new(normalize_angle(theta_a - phi), normalize_angle(theta_b - phi));
        let e = evaluate_e1(angles, self.hints[seg].as_ref())?;
        if e.params.is_some() {
            self.hints[seg] = e.params;
        }
        let len = self.state.chord_lengths[seg];
        Ok((e.energy / len, (e.grad.0 / len, e.grad.1 / len)))
    }

    fn local(&mut self, j: usize, theta: T) -> Result<Local<T>, SplineError> {
        let m = self.state.node_count();
        let mut energy = T::zero();
        let mut slope = T::zero();
        if j > 0 {
            let (e, g) = self.segment(j - 1, self.state.theta[j - 1], theta)?;
            energy = energy + e;
            slope = slope + g.1;
        }
        if j + 1 < m {
            let (e, g) = self.segment(j, theta, self.state.theta[j + 1])?;
            energy = energy + e;
            slope = slope + g.0;
        }
        Ok(Local { energy, slope })
    }

    fn total(&mut self) -> Result<T, SplineError> {
        let mut total = T::zero();
        for seg in 0..self.state.node_count() - 1 {
            let (a, b) = (self.state.theta[seg], self.state.theta[seg + 1]);
            total = total + self.segment(seg, a, b)?.0;
        }
        Ok(total)
    }

    /// Golden-section search for the local energy over `[lo, hi]`, returning
    /// a bracket around the best point.
    fn golden(&mut self, j: usize, lo: T, hi: T) -> Result<(T, T), SplineError> {
        let ratio = lit::<T>(0.618_033_988_749_894_9);
        let stop = (hi - lo) * lit(GOLDEN_SHRINK);
        let (mut a, mut b) = (lo, hi);
        let mut x1 = b - ratio * (b - a);
        let mut x2 = a + ratio * (b - a);
        let mut f1 = self.local(j, x1)?.energy;
        let mut f2 = self.local(j, x2)?.energy;
        while b - a > stop {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - ratio * (b - a);
                f1 = self.local(j, x1)?.energy;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + ratio * (b - a);
                f2 = self.local(j, x2)?.energy;
            }
        }
        Ok((a, b))
    }

    /// Walks downhill from `start` with growing steps until the slope
    /// changes sign or a bound is reached.
    fn bracket_downhill(
        &mut self,
        j: usize,
        start: T,
        at_start: Local<T>,
        step: T,
    ) -> Result<(T, T), SplineError> {
        let (lo, hi) = self.bounds[j];
        let dir = if at_start.slope > T::zero() { -T::one() } else { T::one() };
        let mut prev = start;
        let mut step = step;
        loop {
            let next = (prev + dir * step).max(lo).min(hi);
            if next == prev {
                return Ok((next, next));
            }
            let here = self.local(j, next)?;
            if here.slope == T::zero() || (here.slope > T::zero()) != (at_start.slope > T::zero()) {
                return Ok(if prev < next { (prev, next) } else { (next, prev) });
            }
            if next == lo || next == hi {
                return Ok((next, next));
            }
            prev = next;
            step = step * lit(4.0);
        }
    }

    /// Locates a zero of the slope inside `[a, b]` by bisection, falling
    /// back to the lower-energy end when the slope keeps its sign.
    fn refine(&mut self, j: usize, a: T, b: T) -> Result<T, SplineError> {
        if a == b {
            return Ok(a);
        }
        let (mut a, mut b) = (a, b);
        let fa = self.local(j, a)?;
        let fb = self.local(j, b)?;
        if fa.slope >= T::zero() && fb.slope >= T::zero() {
            return Ok(a);
        }
        if fa.slope <= T::zero() && fb.slope <= T::zero() {
            return Ok(b);
        }
        let a_negative = fa.slope < T::zero();
        let half = lit::<T>(0.5);
        for _ in 0..MAX_REFINE_ITERATIONS {
            let mid = (a + b) * half;
            if mid <= a || mid >= b {
                break;
            }
            let s = self.local(j, mid)?.slope;
            if s == T::zero() {
                return Ok(mid);
            }
            if (s < T::zero()) == a_negative {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok((a + b) * half)
    }

    fn update_node(&mut self, j: usize, first_sweep: bool, last_move: T) -> Result<T, SplineError> {
        let start = self.state.theta[j];
        let (lo, hi) = self.bounds[j];
        if lo == hi {
            return Ok(T::zero());
        }
        let before = self.local(j, start)?;
        if before.slope == T::zero() {
            return Ok(T::zero());
        }
        let (a, b) = if first_sweep {
            let (a, b) = self.golden(j, lo, hi)?;
            // Widen slightly so the bracket shows a slope sign change.
            let pad = (b - a).max(tol::<T>(1e-14));
            ((a - pad).max(lo), (b + pad).min(hi))
        } else {
            let step = last_move.max(tol::<T>(1e-9)).min(hi - lo);
            self.bracket_downhill(j, start, before, step)?
        };
        let candidate = self.refine(j, a, b)?;
        let after = self.local(j, candidate)?;
        let slack = tol::<T>(ENERGY_NOISE) * before.energy.abs();
        if after.energy <= before.energy + slack {
            self.state.theta[j] = candidate;
            Ok((candidate - start).abs())
        } else {
            // Keep the hints consistent with the retained tangent.
            self.local(j, start)?;
            Ok(T::zero())
        }
    }
}

/// Minimizes the total energy over the free node tangents by cyclic
/// coordinate descent.
///
/// The first sweep locates each node's minimum by golden-section search
/// over the whole feasible interval; later sweeps bracket downhill from the
/// current tangent. Both refine the minimum by bisection on the analytic
/// slope. A candidate is accepted only if it does not raise the energy.
pub fn optimize<T: Real>(problem: &SplineProblem<T>) -> Result<SplineSolution<T>, SplineError> {
    let mut opt = Optimizer::new(problem)?;
    let m = opt.state.node_count();
    let mut history = vec![opt.total()?];
    let mut last_moves = vec![T::zero(); m];
    let mut converged = false;
    let mut sweeps = 0;
    let max_sweeps = problem.tolerances.max_sweeps.max(1);
    while sweeps < max_sweeps {
        sweeps += 1;
        let mut largest = T::zero();
        for j in 0..m {
            if !opt.free[j] {
                continue;
            }
            let moved = opt.update_node(j, sweeps == 1, last_moves[j])?;
            last_moves[j] = moved;
            largest = largest.max(moved);
        }
        let before = *history.last().expect("history starts non-empty");
        let after = opt.total()?;
        let slack = tol::<T>(ENERGY_NOISE) * lit::<T>(m as f64) * before.abs();
        if after > before + slack {
            return Err(SplineError::DescentViolated {
                sweep: sweeps,
                before: f64_of(before),
                after: f64_of(after),
            });
        }
        history.push(after);
        if largest < problem.tolerances.angle_tol {
            converged = true;
            break;
        }
    }
    let state = opt.state.clone();
    let mut segments = Vec::with_capacity(m - 1);
    for seg in 0..m - 1 {
        let u = UnitTangent::new(problem.points[seg], state.theta[seg]);
        let v = UnitTangent::new(problem.points[seg + 1], state.theta[seg + 1]);
        segments.push(optimal_scurve_near(&u, &v, opt.hints[seg].as_ref())?);
    }
    let total = segments.iter().fold(T::zero(), |acc, s| acc + s.energy);
    Ok(SplineSolution {
        segments,
        node_states: state,
        total_energy: total,
        sweeps_used: sweeps,
        converged,
        energy_history: history,
    })
}

/// G² diagnostics at one interior node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeReport<T> {
    pub index: usize,
    pub psi: T,
    /// End chord angle of the incoming piece.
    pub alpha_in: T,
    /// Start chord angle of the outgoing piece.
    pub alpha_out: T,
    pub kappa_in: T,
    pub kappa_out: T,
    /// `κ_out − κ_in`, in 1/length.
    pub kappa_jump: T,
    /// `|κ_jump|` divided by the largest node curvature of the spline.
    pub relative_jump: T,
    pub certified_by_psi: bool,
    pub g2_within_tol: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct G2Report<T> {
    pub nodes: Vec<NodeReport<T>>,
    /// Largest `|κ|` at any segment end.
    pub curvature_scale: T,
    pub psi_threshold: T,
}

impl<T: Real> G2Report<T> {
    pub fn all_g2(&self) -> bool {
        self.nodes.iter().all(|n| n.g2_within_tol)
    }
}

/// Per-node curvature jumps and stencil certification.
pub fn g2_report<T: Real>(solution: &SplineSolution<T>) -> G2Report<T> {
    let psi_threshold = constants::<T>().psi;
    let curvature_scale = solution
        .segments
        .iter()
        .fold(T::zero(), |acc, s| acc.max(s.kappa_start.abs()).max(s.kappa_end.abs()));
    let tolerance = lit::<T>(CURVATURE_JUMP_TOL);
    let nodes = solution
        .segments
        .windows(2)
        .enumerate()
        .map(|(i, pair)| {
            let (incoming, outgoing) = (&pair[0], &pair[1]);
            let index = i + 1;
            let psi = solution.node_states.stencil[i];
            let jump = outgoing.kappa_start - incoming.kappa_end;
            let relative_jump = if curvature_scale > T::zero() {
                jump.abs() / curvature_scale
            } else {
                jump.abs()
            };
            NodeReport {
                index,
                psi,
                alpha_in: incoming.angles.beta,
                alpha_out: outgoing.angles.alpha,
                kappa_in: incoming.kappa_end,
                kappa_out: outgoing.kappa_start,
                kappa_jump: jump,
                relative_jump,
                certified_by_psi: psi.abs() < psi_threshold,
                g2_within_tol: relative_jump <= tolerance,
            }
        })
        .collect();
    G2Report {
        nodes,
        curvature_scale,
        psi_threshold,
    }
}
