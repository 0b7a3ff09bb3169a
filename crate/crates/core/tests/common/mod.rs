#![allow(dead_code)]

use hullprobe::geometry::ConvexBody;
use hullprobe::rng::Stream;
use rand::Rng;

/// Random strictly convex polygon: `k` sorted angles on the unit circle pushed
/// through a random orientation-preserving linear map and a translation.
pub fn random_polygon_vertices(rng: &mut Stream, k: usize) -> Vec<[f64; 2]> {
    loop {
        let mut angles: Vec<f64> = (0..k).map(|_| rng.random::<f64>() * std::f64::consts::TAU).collect();
        angles.sort_by(f64::total_cmp);
        let gap_ok = angles.windows(2).all(|w| w[1] - w[0] > 1e-3)
            && angles[0] + std::f64::consts::TAU - angles[k - 1] > 1e-3;
        if !gap_ok {
            continue;
        }
        let (a, b, c, d) = (
            rng.random_range(0.3..3.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(0.3..3.0),
        );
        if a * d - b * c < 0.1 {
            continue;
        }
        let shift = [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)];
        return angles
            .iter()
            .map(|t| {
                let (x, y) = (t.cos(), t.sin());
                [a * x + b * y + shift[0], c * x + d * y + shift[1]]
            })
            .collect();
    }
}

pub fn random_polygon(rng: &mut Stream, k: usize) -> ConvexBody {
    ConvexBody::polygon(random_polygon_vertices(rng, k)).expect("random polygon is valid")
}

pub fn random_unit(rng: &mut Stream, d: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let n = g.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 && n <= 1.0 {
            return g.iter().map(|x| x / n).collect();
        }
    }
}

pub fn to2(p: &[f64]) -> [f64; 2] {
    [p[0], p[1]]
}
