//! Convergence of the normalized curves and continuity of the attractor in α.

use super::{curve_distance, hausdorff_distance};
use crate::error::Result;
use crate::ifs::{attractor, default_n_ref, derive_ifs, normalized_curve};
use crate::turtle::{canonical_order, check_alpha};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub k: u64,
    pub n: u64,
    pub n_next: u64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub i: u64,
    pub alpha: f64,
    pub rows: Vec<ConvergenceRow>,
    pub strictly_decreasing: bool,
    /// Per-step ratio `exp(slope)` of a least-squares line through
    /// `ln d` against `k`, when every distance is positive.
    pub decay_rate: Option<f64>,
}

/// Distances between consecutive self-similar curves.
///
/// For each `k` the curves of orders `n(k)` and `n(k) + 6` are normalized so
/// that their chords have length √2 from the origin, and compared with
/// [`curve_distance`].
pub fn convergence_report(i: u64, alpha: f64, ks: &[u64]) -> Result<ConvergenceReport> {
    check_alpha(alpha)?;
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let n = canonical_order(i, k);
        let a = normalized_curve(i, n, alpha)?;
        let b = normalized_curve(i, n + 6, alpha)?;
        rows.push(ConvergenceRow {
            k,
            n,
            n_next: n + 6,
            distance: curve_distance(&a, &b),
        });
    }
    let strictly_decreasing = rows.windows(2).all(|w| w[1].distance < w[0].distance);
    let decay_rate = if rows.len() >= 2 && rows.iter().all(|r| r.distance > 0.0) {
        let xs: Vec<f64> = rows.iter().map(|r| r.k as f64).collect();
        let ys: Vec<f64> = rows.iter().map(|r| r.distance.ln()).collect();
        Some(super::boxcount::linear_fit(&xs, &ys).0.exp())
    } else {
        None
    };
    Ok(ConvergenceReport {
        i,
        alpha,
        rows,
        strictly_decreasing,
        decay_rate,
    })
}

/// `d_H` between the depth-`depth` attractors at `alpha` and `alpha + delta`,
/// both in the canonical frame.
pub fn continuity_probe(i: u64, alpha: f64, delta: f64, depth: u32) -> Result<f64> {
    check_alpha(alpha)?;
    check_alpha(alpha + delta)?;
    let n_ref = default_n_ref(i);
    let a = attractor(&derive_ifs(i, alpha, n_ref)?, depth);
    if delta == 0.0 {
        return hausdorff_distance(&a, &a);
    }
    let b = attractor(&derive_ifs(i, alpha + delta, n_ref)?, depth);
    hausdorff_distance(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn flat_curves_coincide() {
        let r = convergence_report(2, 0.0, &[1, 2]).unwrap();
        assert!(r.rows.iter().all(|row| row.distance < 1e-12), "{r:?}");
    }

    #[test]
    fn right_angle_distances_shrink() {
        let r = convergence_report(2, FRAC_PI_2, &[1, 2, 3]).unwrap();
        assert!(r.strictly_decreasing, "{r:?}");
        assert!(r.decay_rate.unwrap() < 1.0);
    }

    #[test]
    fn zero_delta_is_zero() {
        assert_eq!(continuity_probe(2, 0.7, 0.0, 5).unwrap(), 0.0);
    }
}
