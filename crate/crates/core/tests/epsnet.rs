use std::f64::consts::E;

use hullprobe::epsnet::{
    epsilon_lower_bound, failure_probability_bound, lemma_constant_check, linear_regime_check, min_valid_c,
    net_size, theorem_constant_check, is_shattered, vc_dimension_halfspaces, NetBound,
};
use hullprobe::rng::Stream;
use rand::Rng;

fn thetas() -> Vec<f64> {
    (1..=10).map(|i| i as f64 * 0.09).collect()
}

fn deltas() -> Vec<f64> {
    (1..=10).map(|i| 10f64.powf(-(i as f64) * 0.5)).collect()
}

#[test]
fn net_size_matches_direct_formula() {
    for d in 1..=6 {
        for &theta in &thetas() {
            for c in [2.0, 3.5, 7.0, 12.0] {
                let inv = (1.0 - theta).powi(-(d as i32));
                let direct = (c * (d as f64 + 1.0) * E * inv * (E * inv).ln()).ceil() as u64;
                let t = net_size(d, theta, c).unwrap();
                assert!(t.abs_diff(direct) <= 1, "d={d} theta={theta} c={c}: {t} vs {direct}");
            }
        }
    }
}

#[test]
fn theorem_condition_implies_lemma_condition() {
    for d in 1..=8 {
        for &theta in &thetas() {
            for &delta in &deltas() {
                let Ok(b) = NetBound::auto(d, theta, delta) else { continue };
                assert!(lemma_constant_check(b.c, b.epsilon, b.vc_dim, delta).unwrap());
                assert!(lemma_constant_check(b.c.max(7.0), b.epsilon, b.vc_dim, delta).unwrap());
            }
        }
    }
}

#[test]
fn min_c_is_minimal_and_monotone() {
    for d in [2, 4] {
        let grid: Vec<Vec<f64>> = thetas()
            .iter()
            .map(|&th| deltas().iter().map(|&de| min_valid_c(d, th, de).unwrap()).collect())
            .collect();
        for (i, &th) in thetas().iter().enumerate() {
            for (j, &de) in deltas().iter().enumerate() {
                let c = grid[i][j];
                assert!(theorem_constant_check(d, th, de, c).unwrap());
                if c > 2.0 + 1e-5 {
                    assert!(!theorem_constant_check(d, th, de, c - 2e-6).unwrap());
                }
                // weaker demands: larger theta, larger delta
                if i > 0 {
                    assert!(c <= grid[i - 1][j] + 1e-6);
                }
                if j > 0 {
                    assert!(c >= grid[i][j - 1] - 1e-6);
                }
            }
        }
    }
}

#[test]
fn tail_term_meets_target() {
    for d in 1..=6 {
        for &theta in &thetas() {
            for &delta in &deltas() {
                for bound in [NetBound::auto(d, theta, delta), NetBound::new(d, theta, delta, 7.0)] {
                    let Ok(b) = bound else { continue };
                    assert!(b.tail_bound_holds(), "{b:?}");
                    let tail = failure_probability_bound(b.t, b.epsilon, b.vc_dim).unwrap();
                    assert!(4.0 * tail.powi(b.vc_dim as i32) <= delta * (1.0 + 1e-9), "{b:?}: {tail}");
                }
            }
        }
    }
}

#[test]
fn linear_regime_small_dims() {
    for d in 2..=8 {
        let r = linear_regime_check(d).unwrap();
        assert!(r.condition_holds && r.within_500d, "{r:?}");
        assert!(r.success_probability >= 1.0 - (-(d as f64)).exp());
    }
}

#[test]
fn epsilon_is_decreasing() {
    for d in 1..=10 {
        let mut prev = 1.0 / E;
        for &th in &thetas() {
            let e = epsilon_lower_bound(d, th).unwrap();
            assert!(e < prev);
            prev = e;
        }
    }
}

fn random_points(rng: &mut Stream, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0)).collect()).collect()
}

#[test]
fn vc_dimension_never_exceeds_d_plus_one() {
    let mut rng = Stream::new(21, 0);
    let mut attained = [false; 4];
    for i in 0..200 {
        let d = 1 + i % 3;
        let n = rng.random_range(1..=8);
        let pts = random_points(&mut rng, n, d);
        let v = vc_dimension_halfspaces(&pts).unwrap();
        assert!(v <= d + 1 && v <= n, "d={d} n={n} vc={v}");
        if v == d + 1 {
            attained[d] = true;
        }
    }
    assert!(attained[1] && attained[2] && attained[3]);
}

#[test]
fn generic_sets_of_size_d_plus_one_are_shattered() {
    let mut rng = Stream::new(22, 0);
    for d in 1..=4 {
        for _ in 0..20 {
            let pts = random_points(&mut rng, d + 1, d);
            assert!(is_shattered(&pts).unwrap());
            let more = random_points(&mut rng, d + 2, d);
            assert!(!is_shattered(&more).unwrap());
        }
    }
}
