//! Closed forms in the drawing angle.
//!
//! Chord widths of every third curve obey `w_k = 2(1 + cos α) w_{k-1} + w_{k-2}`,
//! whose characteristic polynomial `r² - 2(1 + cos α) r - 1` has roots
//! `r± = (1 + cos α) ± √((1 + cos α)² + 1)`.  The contraction ratio is
//! `R = 1/r+` and the attractor's similarity dimension solves
//! `4R^s + R^{2s} = 1`.

use crate::error::{domain, Error, Result};
use crate::fmt::g17;
use crate::turtle::{check_alpha, word_stats, TurnConvention};
use crate::words::word_concat;
use serde::Serialize;

/// Scaling quantities at one drawing angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingProfile {
    pub alpha: f64,
    pub r: f64,
    pub r_plus: f64,
    pub r_minus: f64,
    /// `None` at α = 0, where the limit diverges.
    pub aspect_limit: Option<f64>,
    pub dimension: f64,
}

impl ScalingProfile {
    pub fn at(alpha: f64) -> Result<Self> {
        let (r_plus, r_minus) = characteristic_roots(alpha)?;
        Ok(ScalingProfile {
            alpha,
            r: scaling_ratio(alpha)?,
            r_plus,
            r_minus,
            aspect_limit: aspect_limit(alpha).ok(),
            dimension: hausdorff_dimension(alpha)?,
        })
    }
}

/// Roots `(r+, r-)` of `r² - 2(1 + cos α) r - 1`.
pub fn characteristic_roots(alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    let c = 1.0 + alpha.cos();
    let d = c.hypot(1.0);
    // r- = -1/r+ avoids cancellation in c - d.
    let r_plus = c + d;
    Ok((r_plus, -1.0 / r_plus))
}

/// Contraction ratio `R = 1/((1 + cos α) + √((1 + cos α)² + 1))`.
pub fn scaling_ratio(alpha: f64) -> Result<f64> {
    Ok(1.0 / characteristic_roots(alpha)?.0)
}

/// Limit of the aspect ratio `w/h`, `(r+ - 1)/sin α`.
pub fn aspect_limit(alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if alpha == 0.0 {
        return Err(Error::Divergent(
            "aspect ratio w/h diverges at α = 0".into(),
        ));
    }
    let (r_plus, _) = characteristic_roots(alpha)?;
    Ok((r_plus - 1.0) / alpha.sin())
}

/// Similarity dimension `s = ln(√5 - 2)/ln R`.
pub fn hausdorff_dimension(alpha: f64) -> Result<f64> {
    let r = scaling_ratio(alpha)?;
    // ln(√5 - 2) = -ln(2 + √5), written this way so that s(0) is exactly 1.
    Ok(-(2.0 + 5f64.sqrt()).ln() / r.ln())
}

/// `4R^s + R^{2s} - 1`, zero when `s` is the dimension for ratio `R`.
pub fn dimension_residual(r: f64, s: f64) -> f64 {
    let rs = r.powf(s);
    4.0 * rs + rs * rs - 1.0
}

/// Widths and heights from the two recurrences, plus the closed form
/// `w_k = a r+^k + b r-^k` matched to the seeds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WhSequence {
    pub alpha: f64,
    /// `w[k - 1] = w_k`.
    pub w: Vec<f64>,
    /// `h[k - 1] = h_k`.
    pub h: Vec<f64>,
    pub a: f64,
    pub b: f64,
    pub r_plus: f64,
    pub r_minus: f64,
}

impl WhSequence {
    /// Closed-form width at step `k >= 1`.
    pub fn closed_form(&self, k: u32) -> f64 {
        self.a * self.r_plus.powi(k as i32) + self.b * self.r_minus.powi(k as i32)
    }
}

/// Runs `w_k = 2w_{k-1} + w_{k-2} + 2cos(α) w_{k-1}` and
/// `h_k = h_{k-1} + sin(α) w_{k-1}` from seeds `(w_1, w_2, h_1)` up to `k_max`.
pub fn wh_sequence(alpha: f64, seeds: (f64, f64, f64), k_max: usize) -> Result<WhSequence> {
    let (w1, w2, h1) = seeds;
    if !(w1 > 0.0 && w2 > 0.0 && h1 > 0.0) {
        return Err(domain("recurrence seeds must be positive"));
    }
    if k_max < 2 {
        return Err(domain("k_max must be at least 2"));
    }
    let (r_plus, r_minus) = characteristic_roots(alpha)?;
    let (s, c) = alpha.sin_cos();
    let mut w = vec![w1, w2];
    let mut h = vec![h1];
    for k in 2..k_max {
        w.push(2.0 * w[k - 1] + w[k - 2] + 2.0 * c * w[k - 1]);
    }
    for k in 1..k_max {
        h.push(h[k - 1] + s * w[k - 1]);
    }
    // a r+ + b r- = w1, a r+² + b r-² = w2.
    let det = r_plus * r_minus * r_minus - r_minus * r_plus * r_plus;
    let a = (w1 * r_minus * r_minus - w2 * r_minus) / det;
    let b = (w2 * r_plus - w1 * r_plus * r_plus) / det;
    Ok(WhSequence {
        alpha,
        w,
        h,
        a,
        b,
        r_plus,
        r_minus,
    })
}

/// Seeds `(w_1, w_2, h_1)` measured from the drawn curves of orders `n0`
/// and `n0 + 3`.
pub fn measured_seeds(i: u64, alpha: f64, n0: u64) -> Result<(f64, f64, f64)> {
    let a = word_stats(&word_concat(i, n0)?, alpha, 1.0, TurnConvention::EvenLeft)?;
    let b = word_stats(
        &word_concat(i, n0 + 3)?,
        alpha,
        1.0,
        TurnConvention::EvenLeft,
    )?;
    Ok((a.width, b.width, a.height))
}

/// One row of the dimension table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DimRow {
    pub alpha: f64,
    pub r: f64,
    pub r_plus: f64,
    pub aspect_limit: f64,
    pub dimension: f64,
}

pub fn dim_table(alphas: &[f64]) -> Result<Vec<DimRow>> {
    alphas
        .iter()
        .map(|&alpha| {
            let p = ScalingProfile::at(alpha)?;
            Ok(DimRow {
                alpha,
                r: p.r,
                r_plus: p.r_plus,
                aspect_limit: p.aspect_limit.unwrap_or(f64::INFINITY),
                dimension: p.dimension,
            })
        })
        .collect()
}

/// CSV with header `alpha,R,r_plus,aspect_limit,dimension`; a divergent
/// aspect limit is written as `inf`.
pub fn dim_table_csv(rows: &[DimRow]) -> String {
    let mut s = String::from("alpha,R,r_plus,aspect_limit,dimension\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{}\n",
            g17(r.alpha),
            g17(r.r),
            g17(r.r_plus),
            g17(r.aspect_limit),
            g17(r.dimension)
        ));
    }
    s
}

/// `count` evenly spaced angles from 0 to π/2 inclusive.
pub fn alpha_grid(count: usize) -> Vec<f64> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    match count {
        0 => vec![],
        1 => vec![half_pi],
        _ => (0..count)
            .map(|k| {
                if k + 1 == count {
                    half_pi
                } else {
                    half_pi * k as f64 / (count - 1) as f64
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, SQRT_2};

    #[test]
    fn scaling_ratio_examples() {
        assert!((scaling_ratio(FRAC_PI_2).unwrap() - 1.0 / (1.0 + SQRT_2)).abs() < 1e-15);
        assert!((scaling_ratio(0.0).unwrap() - 1.0 / (2.0 + 5f64.sqrt())).abs() < 1e-15);
        assert!((scaling_ratio(FRAC_PI_3).unwrap() - 1.0 / (1.5 + 3.25f64.sqrt())).abs() < 1e-15);
        assert!((scaling_ratio(FRAC_PI_3).unwrap() - 0.302776).abs() < 1e-6);
        assert!(scaling_ratio(2.0).is_err());
    }

    #[test]
    fn roots_examples() {
        let (p, m) = characteristic_roots(FRAC_PI_2).unwrap();
        assert!((p - (1.0 + SQRT_2)).abs() < 1e-15 && (m - (1.0 - SQRT_2)).abs() < 1e-15);
        let (p, m) = characteristic_roots(0.0).unwrap();
        assert!((p - (2.0 + 5f64.sqrt())).abs() < 1e-15 && (m - (2.0 - 5f64.sqrt())).abs() < 1e-15);
        for alpha in alpha_grid(50) {
            let (p, m) = characteristic_roots(alpha).unwrap();
            assert!((p * m + 1.0).abs() < 1e-15);
            assert!((p + m - 2.0 * (1.0 + alpha.cos())).abs() < 1e-14);
        }
    }

    #[test]
    fn aspect_examples() {
        assert!((aspect_limit(FRAC_PI_2).unwrap() - SQRT_2).abs() < 1e-15);
        let expected = (0.5 + 3.25f64.sqrt()) / (3f64.sqrt() / 2.0);
        assert!((aspect_limit(FRAC_PI_3).unwrap() - expected).abs() < 1e-14);
        assert!(matches!(aspect_limit(0.0), Err(Error::Divergent(_))));
        for alpha in alpha_grid(40).into_iter().skip(1) {
            let r = scaling_ratio(alpha).unwrap();
            let alt = (1.0 - r) / (r * alpha.sin());
            assert!((aspect_limit(alpha).unwrap() - alt).abs() < 1e-12 * alt);
        }
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(hausdorff_dimension(0.0).unwrap(), 1.0);
        let expected = (2.0 + 5f64.sqrt()).ln() / (1.0 + SQRT_2).ln();
        assert!((hausdorff_dimension(FRAC_PI_2).unwrap() - expected).abs() < 1e-15);
        assert!((hausdorff_dimension(FRAC_PI_2).unwrap() - 1.6379).abs() < 1e-4);
        for alpha in alpha_grid(25) {
            let r = scaling_ratio(alpha).unwrap();
            let s = hausdorff_dimension(alpha).unwrap();
            assert!(dimension_residual(r, s).abs() < 1e-12);
        }
    }

    #[test]
    fn wh_examples() {
        let seq = wh_sequence(FRAC_PI_2, (1.0, 1.0, 1.0), 6).unwrap();
        assert_eq!(seq.w[2], 3.0);
        for k in 1..=6 {
            let exact = seq.w[k as usize - 1];
            assert!((seq.closed_form(k) - exact).abs() < 1e-12 * exact);
        }
        let long = wh_sequence(0.7, (2.0, 5.0, 1.0), 40).unwrap();
        let ratio = long.w[39] / long.w[38];
        assert!((ratio - long.r_plus).abs() < 1e-12);
        assert!(wh_sequence(0.7, (0.0, 1.0, 1.0), 4).is_err());
        assert!(wh_sequence(0.7, (1.0, 1.0, 1.0), 1).is_err());
    }

    #[test]
    fn dim_table_layout() {
        let rows = dim_table(&[0.0, FRAC_PI_2]).unwrap();
        let csv = dim_table_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "alpha,R,r_plus,aspect_limit,dimension");
        assert!(lines[1].starts_with("0,0.23606797749978"));
        assert!(lines[1].ends_with(",inf,1"));
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let g = alpha_grid(5);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[4], FRAC_PI_2);
    }
}
