mod common;

use common::{random_polygon, to2};
use hullprobe::experiments::{
    containment_check, empirical_min_t, estimate_success_probability, grunbaum_audit, in_pool, run_sweep,
    run_trial, run_trial_with_sample, AuditMode, SweepConfig, TSpec,
};
use hullprobe::geometry::planar::hull_violation_2d;
use hullprobe::geometry::{BodyKind, BodySpec, ConvexBody};
use hullprobe::rng::Stream;
use rand::Rng;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[test]
fn planar_failures_carry_exact_witnesses() {
    let mut rng = Stream::new(31, 0);
    let mut failures = 0;
    let mut trials = 0;
    while failures < 1000 {
        let body = if trials % 2 == 0 {
            ConvexBody::cube(2, 2.0).unwrap()
        } else {
            let k = rng.random_range(3..9);
            random_polygon(&mut rng, k)
        };
        let theta = rng.random_range(0.3..0.9);
        let t = rng.random_range(3..40);
        let mut stream = Stream::new(32, trials);
        trials += 1;
        let (sample, out) = run_trial_with_sample(&body, theta, t, &mut stream).unwrap();
        let pts: Vec<[f64; 2]> = sample.points.iter().map(|p| to2(p)).collect();
        let scaled: Vec<Vec<f64>> = body.vertices().unwrap().iter().map(|v| vec![theta * v[0], theta * v[1]]).collect();
        let worst = scaled.iter().map(|q| hull_violation_2d(&pts, to2(q))).fold(f64::NEG_INFINITY, f64::max);
        if worst.abs() < 1e-9 {
            continue;
        }
        assert_eq!(out.success, worst < 0.0, "trial {trials}: violation {worst}");
        if out.success {
            continue;
        }
        failures += 1;
        let cap = out.witness_cap.unwrap();
        let u = cap.normal();
        let h_theta = scaled.iter().map(|q| dot(u, q)).fold(f64::NEG_INFINITY, f64::max);
        assert!((cap.offset() - h_theta).abs() <= 1e-12 * h_theta.abs().max(1.0));
        assert!(pts.iter().all(|p| dot(u, p) < cap.offset()));
        let v = out.violated_vertex.unwrap();
        assert!(hull_violation_2d(&pts, to2(&v)) > 0.0);
    }
}

#[test]
fn replay_reproduces_trial() {
    let body = ConvexBody::simplex(3, 1.0).unwrap();
    for id in 0..20 {
        let a = run_trial(&body, 0.5, 60, &mut Stream::new(5, id)).unwrap();
        let b = run_trial(&body, 0.5, 60, &mut Stream::new(5, id)).unwrap();
        assert_eq!(a, b);
        let (sample, c) = run_trial_with_sample(&body, 0.5, 60, &mut Stream::new(5, id)).unwrap();
        assert_eq!(containment_check(&body, 0.5, &sample).unwrap(), c);
    }
}

#[test]
fn estimates_do_not_depend_on_thread_count() {
    let body = ConvexBody::cross_polytope(3, 1.0).unwrap();
    let one = in_pool(1, || estimate_success_probability(&body, 0.4, 200, 300, 9)).unwrap().unwrap();
    let four = in_pool(4, || estimate_success_probability(&body, 0.4, 200, 300, 9)).unwrap().unwrap();
    assert_eq!(one, four);
}

#[test]
fn independent_seeds_agree_within_intervals() {
    let body = ConvexBody::cube(2, 2.0).unwrap();
    let ests: Vec<_> = (0..5)
        .map(|s| estimate_success_probability(&body, 0.5, 40, 400, 100 + s).unwrap())
        .collect();
    for a in &ests {
        assert!(a.wilson_low <= a.p_hat && a.p_hat <= a.wilson_high);
        for b in &ests {
            assert!(a.wilson_low <= b.wilson_high && b.wilson_low <= a.wilson_high, "{a:?} vs {b:?}");
        }
    }
}

#[test]
fn empirical_min_t_stays_below_bound() {
    let body = ConvexBody::cube(2, 2.0).unwrap();
    let r = empirical_min_t(&body, 0.5, 0.9, 200, 3).unwrap();
    assert!(r.reachable);
    assert!(r.t_empirical <= r.t_bound && r.ratio >= 1.0);
    assert!(r.trace.windows(2).all(|w| w[0].0 <= w[1].0));
    let at_min = r.trace.iter().find(|(t, _)| *t == r.t_empirical).unwrap();
    assert!(at_min.1.p_hat >= 0.9);
}

#[test]
fn sweep_rows_follow_grid_order() {
    let cfg = SweepConfig {
        body: BodySpec { kind: BodyKind::Cube, dim: 2, scale: 2.0, vertices: None },
        dims: vec![2, 3],
        thetas: vec![0.3, 0.6],
        ts: TSpec::Fixed(vec![10, 50]),
        trials: 50,
        seed: 1,
    };
    let rows = run_sweep(&cfg).unwrap();
    assert_eq!(rows.len(), 8);
    assert_eq!((rows[0].d, rows[0].theta, rows[0].t), (2, 0.3, 10));
    assert_eq!((rows[7].d, rows[7].theta, rows[7].t), (3, 0.6, 50));
    // common random numbers: a larger sample extends the smaller one
    for pair in rows.chunks(2) {
        assert!(pair[1].successes >= pair[0].successes);
    }
    let empty = SweepConfig { thetas: vec![], ..cfg };
    assert!(run_sweep(&empty).is_err());
}

#[test]
fn audits_report_modes_and_floors() {
    let poly = random_polygon(&mut Stream::new(40, 0), 7);
    let exact = grunbaum_audit(&poly, 0.3, 100, 0, &mut Stream::new(41, 0)).unwrap();
    assert_eq!(exact.mode, AuditMode::Exact);
    assert_eq!(exact.violations, 0);
    assert!(exact.min_fraction >= exact.floor);

    let ball = ConvexBody::ball(3, 1.0).unwrap();
    let mc = grunbaum_audit(&ball, 0.2, 10, 20_000, &mut Stream::new(42, 0)).unwrap();
    assert_eq!(mc.mode, AuditMode::MonteCarlo);
    assert_eq!(mc.violations, 0);
}
