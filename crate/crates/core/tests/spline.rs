use std::f64::consts::FRAC_PI_2;

use relspline::spline::{g2_report, initialize_tangents, optimize, stencil_angles, total_energy};
use relspline::{Complex, EndpointMode, SCurveKind, SplineError, SplineProblem, Tolerances};

fn pts(xy: &[(f64, f64)]) -> Vec<Complex<f64>> {
    xy.iter().map(|&(x, y)| Complex::new(x, y)).collect()
}

fn gentle() -> Vec<Complex<f64>> {
    pts(&[(0.0, 0.0), (1.0, 0.4), (2.1, 0.6), (3.1, 0.4), (4.1, 0.0), (5.2, -0.1)])
}

#[test]
fn two_point_u_turn_energy() {
    let p = pts(&[(0.0, 0.0), (2.0, 0.0)]);
    let mode = EndpointMode::Clamped { first: FRAC_PI_2, last: -FRAC_PI_2 };
    let state = initialize_tangents(&p, mode).unwrap();
    let d = relspline::constants().d;
    assert!((total_energy(&p, &state).unwrap() - d * d / 2.0).abs() < 1e-12);
    let sol = optimize(&SplineProblem::new(p, mode).unwrap()).unwrap();
    assert_eq!(sol.segments[0].kind, SCurveKind::UTurnArc);
    assert!((sol.total_energy - d * d / 2.0).abs() < 1e-12);
}

#[test]
fn free_two_point_spline_is_a_line() {
    let sol = optimize(&SplineProblem::new(pts(&[(0.0, 0.0), (1.0, 2.0)]), EndpointMode::Free).unwrap()).unwrap();
    assert_eq!(sol.segments[0].kind, SCurveKind::LineSegment);
    assert_eq!(sol.total_energy, 0.0);
}

#[test]
fn gentle_polyline_is_certified_and_g2() {
    let p = gentle();
    let psi = relspline::constants().psi;
    assert!(stencil_angles(&p).unwrap().iter().all(|s| s.abs() < psi));
    let sol = optimize(&SplineProblem::new(p, EndpointMode::Free).unwrap()).unwrap();
    assert!(sol.converged);
    let report = g2_report(&sol);
    assert_eq!(report.nodes.len(), 4);
    for n in &report.nodes {
        assert!(n.certified_by_psi, "{n:?}");
        assert!(n.g2_within_tol, "{n:?}");
        assert!(n.alpha_in.abs() < FRAC_PI_2 && n.alpha_out.abs() < FRAC_PI_2);
    }
    // Free ends of a minimal curve carry no curvature.
    let first = sol.segments.first().unwrap().kappa_start;
    let last = sol.segments.last().unwrap().kappa_end;
    assert!(first.abs() <= 1e-6 * report.curvature_scale, "{first}");
    assert!(last.abs() <= 1e-6 * report.curvature_scale, "{last}");
}

#[test]
fn clamped_ends_are_respected() {
    let mode = EndpointMode::Clamped { first: 0.8, last: -0.6 };
    let sol = optimize(&SplineProblem::new(gentle(), mode).unwrap()).unwrap();
    assert!(sol.converged);
    assert_eq!(sol.node_states.theta[0], 0.8);
    assert_eq!(*sol.node_states.theta.last().unwrap(), -0.6);
    assert!(g2_report(&sol).all_g2());
}

#[test]
fn sharp_corner_pins_the_chord_angle() {
    // ψ = 2.6 rad leaves a feasible width of π − 2.6; G² is not expected.
    let p = pts(&[(0.0, 0.0), (1.0, 0.0), (1.0 + 2.6f64.cos(), 2.6f64.sin())]);
    let sol = optimize(&SplineProblem::new(p, EndpointMode::Free).unwrap()).unwrap();
    let node = g2_report(&sol).nodes[0];
    assert!(!node.certified_by_psi);
    assert!(sol.segments.iter().all(|s| s.angles.in_square(1e-12)));
}

#[test]
fn anti_parallel_chords_are_rejected() {
    let p = pts(&[(0.0, 0.0), (1.0, 0.0), (0.5, 0.0)]);
    let err = optimize(&SplineProblem::new(p, EndpointMode::Free).unwrap()).unwrap_err();
    assert_eq!(err, SplineError::EmptyFeasible { index: 1 });
}

#[test]
fn sweep_budget_reports_non_convergence() {
    let problem = SplineProblem::new(gentle(), EndpointMode::Free)
        .unwrap()
        .with_tolerances(Tolerances { angle_tol: 1e-10, max_sweeps: 2 });
    let sol = optimize(&problem).unwrap();
    assert!(!sol.converged);
    assert_eq!(sol.sweeps_used, 2);
    assert_eq!(sol.energy_history.len(), 3);
}

#[test]
fn validation_errors() {
    assert_eq!(
        SplineProblem::new(pts(&[(0.0, 0.0)]), EndpointMode::Free).unwrap_err(),
        SplineError::TooFewPoints(1)
    );
    assert_eq!(
        SplineProblem::new(pts(&[(0.0, 0.0), (1.0, 1.0), (1.0, 1.0)]), EndpointMode::Free).unwrap_err(),
        SplineError::CoincidentPoints { index: 1 }
    );
    assert_eq!(
        SplineProblem::new(pts(&[(0.0, 0.0), (f64::NAN, 1.0)]), EndpointMode::Free).unwrap_err(),
        SplineError::NonFinite { index: 1 }
    );
}

#[test]
fn similarity_invariance() {
    let p = gentle();
    let (s, rot, shift) = (3.7, Complex::from_polar(1.0, 0.9), Complex::new(-2.0, 5.5));
    let q: Vec<_> = p.iter().map(|z| rot * z * s + shift).collect();
    let a = optimize(&SplineProblem::new(p, EndpointMode::Free).unwrap()).unwrap();
    let b = optimize(&SplineProblem::new(q, EndpointMode::Free).unwrap()).unwrap();
    assert!((a.total_energy / s - b.total_energy).abs() <= 1e-10 * a.total_energy);
    for (x, y) in a.segments.iter().zip(&b.segments) {
        assert!(x.angles.max_abs_diff(y.angles) <= 1e-10);
    }
    let (ra, rb) = (g2_report(&a), g2_report(&b));
    for (x, y) in ra.nodes.iter().zip(&rb.nodes) {
        assert!((x.psi - y.psi).abs() <= 1e-10);
        assert_eq!(x.certified_by_psi, y.certified_by_psi);
        assert_eq!(x.g2_within_tol, y.g2_within_tol);
    }
}

#[test]
fn reversal_invariance() {
    let p = gentle();
    let mut q = p.clone();
    q.reverse();
    let a = optimize(&SplineProblem::new(p, EndpointMode::Free).unwrap()).unwrap();
    let b = optimize(&SplineProblem::new(q, EndpointMode::Free).unwrap()).unwrap();
    assert!((a.total_energy - b.total_energy).abs() <= 1e-9 * a.total_energy);
    for (x, y) in a.segments.iter().zip(b.segments.iter().rev()) {
        assert!(x.angles.max_abs_diff(y.angles.swapped()) <= 1e-9, "{:?} {:?}", x.angles, y.angles);
    }
}

#[test]
fn single_precision_spline() {
    let p: Vec<Complex<f32>> = gentle().iter().map(|z| Complex::new(z.re as f32, z.im as f32)).collect();
    let problem = relspline::spline::SplineProblem::new(p, relspline::spline::EndpointMode::Free).unwrap();
    let sol = optimize(&problem).unwrap();
    let reference = optimize(&SplineProblem::new(gentle(), EndpointMode::Free).unwrap()).unwrap();
    assert!(sol.converged);
    assert!((sol.total_energy as f64 - reference.total_energy).abs() < 1e-4 * reference.total_energy);
}
