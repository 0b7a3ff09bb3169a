//! Brute-force shattering for halfspace range spaces over finite point sets.
//!
//! A subset `S ⊆ V` is cut out by a closed halfspace exactly when
//! `conv(S)` and `conv(V \ S)` are disjoint, so each labelling costs one
//! separability LP.

use crate::geometry::DEFAULT_TOL;
use crate::lp::hulls_disjoint;
use crate::{Error, Result};

pub const MAX_VC_POINTS: usize = 20;

fn check_points(v: &[Vec<f64>]) -> Result<usize> {
    if v.len() > MAX_VC_POINTS {
        return Err(Error::invalid(format!(
            "brute-force shattering is capped at {MAX_VC_POINTS} points, got {}",
            v.len()
        )));
    }
    let d = v.first().map_or(0, |p| p.len());
    if v.iter().any(|p| p.len() != d) || (d == 0 && !v.is_empty()) {
        return Err(Error::invalid("points must share a positive dimension"));
    }
    Ok(d)
}

/// Whether halfspaces realize every subset of `v`.
pub fn is_shattered(v: &[Vec<f64>]) -> Result<bool> {
    check_points(v)?;
    let n = v.len();
    if n <= 1 {
        return Ok(true);
    }
    // S and its complement are realized together (flip the halfspace), so
    // only labellings that leave point 0 outside S are tried
    for mask in 1u32..(1 << (n - 1)) {
        let mask = mask << 1;
        let (inside, outside): (Vec<_>, Vec<_>) = (0..n).partition(|&i| mask >> i & 1 == 1);
        let a: Vec<Vec<f64>> = inside.iter().map(|&i| v[i].clone()).collect();
        let b: Vec<Vec<f64>> = outside.iter().map(|&i| v[i].clone()).collect();
        if !hulls_disjoint(&a, &b, DEFAULT_TOL)?.disjoint {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest shattered subset size. Shattering is hereditary, so sizes are
/// scanned downward and the first hit is the answer.
pub fn vc_dimension_halfspaces(v: &[Vec<f64>]) -> Result<usize> {
    check_points(v)?;
    let n = v.len();
    for k in (1..=n).rev() {
        let mut found = false;
        for_each_subset(n, k, &mut |idx| {
            let w: Vec<Vec<f64>> = idx.iter().map(|&i| v[i].clone()).collect();
            match is_shattered(&w) {
                Ok(true) => {
                    found = true;
                    Ok(false)
                }
                Ok(false) => Ok(true),
                Err(e) => Err(e),
            }
        })?;
        if found {
            return Ok(k);
        }
    }
    Ok(0)
}

/// Calls `f` on each k-subset in lexicographic order while it returns `Ok(true)`.
fn for_each_subset(
    n: usize,
    k: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<()> {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx)? {
            return Ok(());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return Ok(());
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_is_shattered() {
        let v = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(is_shattered(&v).unwrap());
        assert_eq!(vc_dimension_halfspaces(&v).unwrap(), 3);
    }

    #[test]
    fn square_corners_not_shattered() {
        let v = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]];
        assert!(!is_shattered(&v).unwrap());
        assert_eq!(vc_dimension_halfspaces(&v).unwrap(), 3);
    }

    #[test]
    fn point_inside_triangle_not_shattered() {
        let v = vec![vec![0.0, 0.0], vec![4.0, 0.0], vec![0.0, 4.0], vec![1.0, 1.0]];
        assert!(!is_shattered(&v).unwrap());
    }

    #[test]
    fn collinear_points() {
        let v = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![2.0, 0.0]];
        assert!(!is_shattered(&v).unwrap());
        assert!(is_shattered(&v[..2]).unwrap());
        assert_eq!(vc_dimension_halfspaces(&v).unwrap(), 2);
    }

    #[test]
    fn subset_enumeration_counts() {
        let mut count = 0;
        for_each_subset(6, 3, &mut |_| {
            count += 1;
            Ok(true)
        })
        .unwrap();
        assert_eq!(count, 20);
        let mut seen = Vec::new();
        for_each_subset(3, 3, &mut |s| {
            seen.push(s.to_vec());
            Ok(true)
        })
        .unwrap();
        assert_eq!(seen, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn size_cap() {
        let v: Vec<Vec<f64>> = (0..21).map(|i| vec![i as f64]).collect();
        assert!(matches!(is_shattered(&v), Err(Error::InvalidArgument(_))));
        assert!(vc_dimension_halfspaces(&[]).unwrap() == 0);
    }
}
