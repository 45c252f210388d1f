//! Box counting on grids anchored at the set's lower-left corner.

use crate::error::{domain, Result};
use crate::fmt::g17;
use crate::geom::{bounds, diameter, Point};
use rayon::prelude::*;
use serde::Serialize;

/// Grid offsets, in cells, averaged by [`box_counting_dimension`].
pub const GRID_OFFSETS: [f64; 4] = [0.0, 0.25, 0.5, 0.75];

/// Number of distinct cells of side `eps` holding at least one point, on the
/// grid whose origin is the lower-left corner of the set's bounding box.
pub fn box_count(a: &[Point], eps: f64) -> usize {
    box_count_offset(a, eps, 0.0)
}

/// [`box_count`] with the grid origin moved down and left by `offset` cells.
pub fn box_count_offset(a: &[Point], eps: f64, offset: f64) -> usize {
    assert!(eps > 0.0, "box size must be positive");
    let Some((lo, _)) = bounds(a) else { return 0 };
    let mut keys: Vec<u64> = a
        .par_iter()
        .map(|p| {
            let ix = ((p.x - lo.x) / eps + offset).floor() as u64;
            let iy = ((p.y - lo.y) / eps + offset).floor() as u64;
            (ix << 32) | (iy & 0xffff_ffff)
        })
        .collect();
    keys.par_sort_unstable();
    keys.dedup();
    keys.len()
}

/// Box-counting fit for one point set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionReport {
    pub alpha: Option<f64>,
    /// Analytic dimension, when the set is an attractor of known angle.
    pub analytic_s: Option<f64>,
    /// Least-squares slope of `ln N(ε)` against `ln(1/ε)`.
    pub boxcount_s: f64,
    pub fit_r2: f64,
    /// Strictly decreasing box sizes.
    pub scales_used: Vec<f64>,
    /// Mean count over the grid offsets at each box size.
    pub counts: Vec<f64>,
}

impl DimensionReport {
    pub fn with_analytic(mut self, alpha: f64, s: f64) -> Self {
        self.alpha = Some(alpha);
        self.analytic_s = Some(s);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One row per box size; summary columns repeat on every row.
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(g17).unwrap_or_default();
        let mut s = String::from("alpha,analytic_s,boxcount_s,fit_r2,epsilon,count\n");
        for (e, n) in self.scales_used.iter().zip(&self.counts) {
            s.push_str(&format!(
                "{},{},{},{},{},{}\n",
                opt(self.alpha),
                opt(self.analytic_s),
                g17(self.boxcount_s),
                g17(self.fit_r2),
                g17(*e),
                g17(*n)
            ));
        }
        s
    }
}

/// Fits the box-counting slope over `levels` box sizes spaced geometrically
/// from `eps_max` down to `eps_min`, averaging each count over the four
/// quarter-cell grid offsets.  Levels where the whole set fits in one box are
/// not used.
pub fn box_counting_dimension(
    a: &[Point],
    eps_max: f64,
    eps_min: f64,
    levels: usize,
) -> Result<DimensionReport> {
    if !(eps_max > eps_min && eps_min > 0.0) {
        return Err(domain("box sizes need eps_max > eps_min > 0"));
    }
    if levels < 5 {
        return Err(domain("box counting needs at least 5 levels"));
    }
    if a.is_empty() {
        return Err(domain("box counting needs a non-empty set"));
    }
    let ratio = eps_min / eps_max;
    let mut scales = Vec::new();
    let mut counts = Vec::new();
    for j in 0..levels {
        let eps = eps_max * ratio.powf(j as f64 / (levels - 1) as f64);
        let mean = GRID_OFFSETS
            .iter()
            .map(|&o| box_count_offset(a, eps, o) as f64)
            .sum::<f64>()
            / GRID_OFFSETS.len() as f64;
        if mean > 1.0 {
            scales.push(eps);
            counts.push(mean);
        }
    }
    if scales.len() < 5 {
        return Err(domain(format!(
            "only {} usable box-counting levels",
            scales.len()
        )));
    }
    let xs: Vec<f64> = scales.iter().map(|e| -e.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|n| n.ln()).collect();
    let (slope, r2) = linear_fit(&xs, &ys);
    Ok(DimensionReport {
        alpha: None,
        analytic_s: None,
        boxcount_s: slope,
        fit_r2: r2,
        scales_used: scales,
        counts,
    })
}

/// Slope and coefficient of determination of the least-squares line.
pub(crate) fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, r2)
}

/// Mean number of points per occupied cell required at the smallest default
/// box size.
pub const MIN_OCCUPANCY: f64 = 32.0;

/// Default window: `eps_max` = diameter/8, and `eps_min` the smallest size,
/// stepping down by quarter octaves, at which occupied cells still hold at
/// least [`MIN_OCCUPANCY`] points on average.
pub fn default_scales(a: &[Point]) -> Result<(f64, f64)> {
    let d = diameter(a);
    if d == 0.0 {
        return Err(domain("box counting needs a set of positive diameter"));
    }
    let eps_max = d / 8.0;
    let eps_min = occupancy_floor(a, eps_max);
    if eps_min >= eps_max {
        return Err(domain(
            "set is too sparse for box counting below diameter/8",
        ));
    }
    Ok((eps_max, eps_min))
}

/// Smallest box size reached from `eps_max` in quarter-octave steps while
/// occupied boxes still hold [`MIN_OCCUPANCY`] points on average.  Returns
/// `eps_max` itself when the first step already falls below the floor.
pub fn occupancy_floor(a: &[Point], eps_max: f64) -> f64 {
    let step = 2f64.powf(-0.25);
    let mut eps_min = eps_max;
    loop {
        let next = eps_min * step;
        if (box_count(a, next) as f64) * MIN_OCCUPANCY > a.len() as f64 {
            return eps_min;
        }
        eps_min = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(box_count(&[Point::new(0.3, -2.0)], 0.01), 1);
        let seg: Vec<Point> = (0..=10_000)
            .map(|k| Point::new(k as f64 / 10_000.0, 0.0))
            .collect();
        let n = box_count(&seg, 0.1);
        assert!(n == 10 || n == 11, "{n}");
        let mut prev = usize::MAX;
        for k in 0..20 {
            let n = box_count(&seg, 0.01 * 1.3f64.powi(k));
            assert!(n <= prev);
            prev = n;
        }
    }

    #[test]
    fn fit_is_exact_on_power_law() {
        let (s, r2) = linear_fit(&[0.0, 1.0, 2.0, 3.0], &[1.0, 2.5, 4.0, 5.5]);
        assert!((s - 1.5).abs() < 1e-15 && (r2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_windows() {
        let pts = [Point::ORIGIN, Point::new(1.0, 1.0)];
        assert!(box_counting_dimension(&pts, 0.1, 0.2, 6).is_err());
        assert!(box_counting_dimension(&pts, 0.2, 0.1, 4).is_err());
        // Two points: every level has at most two boxes, most levels usable,
        // but the very coarse ones are not.
        assert!(box_counting_dimension(&pts, 100.0, 50.0, 5).is_err());
    }

    #[test]
    fn report_csv_layout() {
        let seg: Vec<Point> = (0..=4096)
            .map(|k| Point::new(k as f64 / 4096.0, 0.0))
            .collect();
        let r = box_counting_dimension(&seg, 1.0 / 8.0, 1.0 / 256.0, 6).unwrap();
        let csv = r.to_csv();
        assert!(csv.starts_with("alpha,analytic_s,boxcount_s,fit_r2,epsilon,count\n"));
        assert_eq!(csv.lines().count(), 7);
        assert!(r.to_json().contains("\"counts\""));
    }
}
