//! Exact uniform samplers for the catalog bodies.

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use super::{norm, BodyKind, ConvexBody};

impl ConvexBody {
    /// One point distributed uniformly on the body.
    pub fn sample_uniform<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        let d = self.dim();
        let s = self.scale();
        match self.kind() {
            BodyKind::Cube => {
                let h = 0.5 * s;
                (0..d).map(|_| rng.random_range(-h..=h)).collect()
            }
            BodyKind::Ball => loop {
                let g: Vec<f64> = (0..d).map(|_| StandardNormal.sample(rng)).collect();
                let n = norm(&g);
                if n > 0.0 {
                    let u: f64 = rng.random();
                    let r = s * u.powf(1.0 / d as f64);
                    break g.iter().map(|x| x * r / n).collect();
                }
            },
            BodyKind::CenteredSimplex => {
                // Dirichlet(1,…,1) weights over the d+1 vertices
                let w = dirichlet_ones(rng, d + 1);
                let shift = 1.0 / (d as f64 + 1.0);
                w[..d].iter().map(|wi| s * (wi - shift)).collect()
            }
            BodyKind::CrossPolytope => {
                let e: Vec<f64> = (0..=d).map(|_| Exp1.sample(rng)).collect();
                let total: f64 = e.iter().sum();
                e[..d]
                    .iter()
                    .map(|ei| {
                        let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
                        sign * s * ei / total
                    })
                    .collect()
            }
            BodyKind::Polygon2d => {
                let poly = self.polygon_ref().expect("polygon body");
                let verts = poly.vertices();
                let n = verts.len();
                // fan from the centroid (the origin)
                let areas: Vec<f64> = (0..n)
                    .map(|i| {
                        let a = verts[i];
                        let b = verts[(i + 1) % n];
                        0.5 * (a[0] * b[1] - a[1] * b[0])
                    })
                    .collect();
                let total: f64 = areas.iter().sum();
                let mut pick = rng.random::<f64>() * total;
                let mut idx = n - 1;
                for (i, a) in areas.iter().enumerate() {
                    if pick < *a {
                        idx = i;
                        break;
                    }
                    pick -= a;
                }
                let a = verts[idx];
                let b = verts[(idx + 1) % n];
                let w = dirichlet_ones(rng, 3);
                vec![w[1] * a[0] + w[2] * b[0], w[1] * a[1] + w[2] * b[1]]
            }
        }
    }

    pub fn sample_many<R: Rng + ?Sized>(&self, rng: &mut R, count: usize) -> Vec<Vec<f64>> {
        (0..count).map(|_| self.sample_uniform(rng)).collect()
    }
}

fn dirichlet_ones<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = e.iter().sum();
    e.iter().map(|x| x / total).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;

    fn ks_two_sample(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        let (mut i, mut j, mut d) = (0usize, 0usize, 0.0f64);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                i += 1;
            } else {
                j += 1;
            }
            d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
        }
        d
    }

    #[test]
    fn cube_marginals_are_uniform() {
        let cube = ConvexBody::cube(3, 2.0).unwrap();
        let mut rng = Stream::new(11, 0);
        let pts = cube.sample_many(&mut rng, 20_000);
        for k in 0..3 {
            let mut xs: Vec<f64> = pts.iter().map(|p| p[k]).collect();
            xs.sort_by(f64::total_cmp);
            let n = xs.len() as f64;
            let ks = xs
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let f = (x + 1.0) / 2.0;
                    (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
                })
                .fold(0.0, f64::max);
            // 1% critical value ~ 1.63 / sqrt(n)
            assert!(ks < 1.63 / n.sqrt(), "coordinate {k}: {ks}");
        }
    }

    #[test]
    fn simplex_empirical_centroid_near_origin() {
        let body = ConvexBody::simplex(3, 1.0).unwrap();
        let mut rng = Stream::new(5, 1);
        let n = 100_000;
        let pts = body.sample_many(&mut rng, n);
        for k in 0..3 {
            let xs: Vec<f64> = pts.iter().map(|p| p[k]).collect();
            let mean = xs.iter().sum::<f64>() / n as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
            let sigma = (var / n as f64).sqrt();
            assert!(mean.abs() < 3.0 * sigma, "coord {k}: mean {mean}, 3σ {}", 3.0 * sigma);
        }
    }

    #[test]
    fn square_polygon_matches_cube_marginal() {
        let square = ConvexBody::polygon(vec![[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]]).unwrap();
        let cube = ConvexBody::cube(2, 2.0).unwrap();
        let n = 10_000;
        let a: Vec<f64> = square.sample_many(&mut Stream::new(3, 0), n).iter().map(|p| p[0]).collect();
        let b: Vec<f64> = cube.sample_many(&mut Stream::new(3, 1), n).iter().map(|p| p[0]).collect();
        let d = ks_two_sample(a, b);
        // two-sample critical value at alpha = 0.01
        let crit = 1.628 * ((2 * n) as f64 / (n * n) as f64).sqrt();
        assert!(d < crit, "KS statistic {d} >= {crit}");
    }

    #[test]
    fn samples_stay_inside() {
        let bodies = [
            ConvexBody::cube(4, 2.0).unwrap(),
            ConvexBody::ball(4, 1.3).unwrap(),
            ConvexBody::simplex(4, 2.0).unwrap(),
            ConvexBody::cross_polytope(4, 1.0).unwrap(),
            ConvexBody::polygon(vec![[0.0, 0.0], [4.0, 1.0], [3.0, 3.0], [-1.0, 2.0]]).unwrap(),
        ];
        let mut rng = Stream::new(99, 0);
        for body in &bodies {
            for _ in 0..5000 {
                let p = body.sample_uniform(&mut rng);
                assert!(body.contains_point(&p, 1e-9).unwrap(), "{body}: {p:?}");
            }
        }
    }

    #[test]
    fn cross_polytope_radial_law() {
        // |x|_1 / r has the law of U^{1/d}: P(|x|_1 <= r/2) = 2^{-d}
        let body = ConvexBody::cross_polytope(3, 1.0).unwrap();
        let mut rng = Stream::new(21, 0);
        let n = 40_000;
        let hits = (0..n)
            .filter(|_| body.sample_uniform(&mut rng).iter().map(|x| x.abs()).sum::<f64>() <= 0.5)
            .count() as f64
            / n as f64;
        let sigma = (0.125f64 * 0.875 / n as f64).sqrt();
        assert!((hits - 0.125).abs() < 4.0 * sigma, "{hits}");
    }
}
