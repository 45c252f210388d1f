//! Open set condition on a bounding trapezoid.
//!
//! Work in the chord frame: the chord runs from `(0, 0)` to `(L, 0)` and the
//! attractor bulges to `y > 0`.  The trapezoid has its base on the chord, its
//! sides through the chord endpoints at the supporting angles of a depth-8
//! sample, and its top at height `H`.  Image `k` of the trapezoid has vertex
//! heights that are affine in `H`, `y = a + bH` with `b < 1`, so the least
//! height at which no image pokes through the top is
//! `H* = max(H_sample, max a/(1 - b))`.

use super::{attractor, Ifs};
use crate::geom::{containment_margin, sat_clearance, Point};
use num_complex::Complex64;
use serde::Serialize;

/// Outcome of the open set condition check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OscReport {
    /// Every image trapezoid lies in the closed trapezoid (tolerance 1e-9).
    pub contained: bool,
    /// The five image trapezoids have pairwise disjoint interiors.
    pub pairwise_disjoint: bool,
    /// Smallest clearance between images that are not neighbours along the
    /// curve; neighbours always touch at a junction.
    pub margin: f64,
    /// Smallest inward distance of an image vertex from the trapezoid's
    /// edges (about zero: images touch the boundary).
    pub containment_slack: f64,
    /// Smallest separating-axis clearance over all image pairs.
    pub min_pair_clearance: f64,
    /// Trapezoid vertices in the canonical frame, counter-clockwise.
    pub trapezoid: [Point; 4],
    /// Sample height and the lifted height, in units of the chord length.
    pub sample_height: f64,
    pub height: f64,
}

struct Frame {
    /// Canonical → chord frame: `z ↦ flip(z / u)`.
    u: Complex64,
    flip: bool,
}

impl Frame {
    fn to_chord(&self, p: Point) -> Point {
        let z = Complex64::from(p) / self.u;
        Point::from(if self.flip { z.conj() } else { z })
    }

    fn to_canonical(&self, p: Point) -> Point {
        let z = Complex64::from(p);
        let z = if self.flip { z.conj() } else { z };
        Point::from(z * self.u)
    }
}

fn trapezoid(len: f64, h: f64, left: f64, right: f64) -> [Point; 4] {
    [
        Point::new(0.0, 0.0),
        Point::new(len, 0.0),
        Point::new(len - h / right.tan(), h),
        Point::new(h / left.tan(), h),
    ]
}

/// Checks the open set condition on the bounding trapezoid of the depth-8
/// attractor sample.
pub fn verify_osc(ifs: &Ifs) -> OscReport {
    verify_osc_at_depth(ifs, 8)
}

pub fn verify_osc_at_depth(ifs: &Ifs, depth: u32) -> OscReport {
    let [o, e] = ifs.seeds();
    let chord = Complex64::from(e) - Complex64::from(o);
    let len = chord.norm();
    let mut frame = Frame {
        u: chord / len,
        flip: false,
    };
    let sample = attractor(ifs, depth);
    let local: Vec<Point> = sample.iter().map(|&p| frame.to_chord(p - o)).collect();
    let total_y: f64 = local.iter().map(|p| p.y).sum();
    if total_y < 0.0 {
        frame.flip = true;
    }
    let local: Vec<Point> = if frame.flip {
        local.iter().map(|p| Point::new(p.x, -p.y)).collect()
    } else {
        local
    };
    let tiny = 1e-12 * len;
    let h_sample = local.iter().map(|p| p.y).fold(0.0, f64::max);
    let left = local
        .iter()
        .filter(|p| p.norm() > tiny)
        .map(|p| p.y.atan2(p.x))
        .fold(f64::NEG_INFINITY, f64::max);
    let right = local
        .iter()
        .filter(|p| (Point::new(len, 0.0) - **p).norm() > tiny)
        .map(|p| p.y.atan2(len - p.x))
        .fold(f64::NEG_INFINITY, f64::max);
    // Guard degenerate (flat) samples so the trapezoid stays well-defined.
    let left = left.max(1e-9);
    let right = right.max(1e-9);

    let to_canonical = |q: [Point; 4]| q.map(|p| frame.to_canonical(p) + o);
    let image_heights = |h: f64| -> Vec<[f64; 4]> {
        let q = to_canonical(trapezoid(len, h, left, right));
        ifs.maps
            .iter()
            .map(|m| q.map(|p| frame.to_chord(m.apply(p) - o).y))
            .collect()
    };
    let at0 = image_heights(0.0);
    let at1 = image_heights(1.0);
    let mut height = h_sample;
    for (y0, y1) in at0.iter().zip(&at1) {
        for (a, b1) in y0.iter().zip(y1) {
            let b = b1 - a;
            if b < 1.0 {
                height = height.max(a / (1.0 - b));
            }
        }
    }

    let quad = to_canonical(trapezoid(len, height, left, right));
    let images: Vec<[Point; 4]> = ifs.maps.iter().map(|m| quad.map(|p| m.apply(p))).collect();
    let tol = 1e-9 * len.max(height);
    let containment_slack = images
        .iter()
        .map(|im| containment_margin(&quad, im))
        .fold(f64::INFINITY, f64::min);
    let mut min_pair_clearance = f64::INFINITY;
    let mut margin = f64::INFINITY;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            let gap = sat_clearance(&images[a], &images[b]);
            min_pair_clearance = min_pair_clearance.min(gap);
            if b > a + 1 {
                margin = margin.min(gap);
            }
        }
    }
    let ccw = if crate::geom::signed_area(&quad) < 0.0 {
        [quad[0], quad[3], quad[2], quad[1]]
    } else {
        quad
    };
    OscReport {
        contained: containment_slack >= -tol,
        pairwise_disjoint: min_pair_clearance >= -tol,
        margin,
        containment_slack,
        min_pair_clearance,
        trapezoid: ccw,
        sample_height: h_sample / len,
        height: height / len,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::derive_ifs;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn right_angle_and_quarter_pass() {
        for alpha in [FRAC_PI_2, FRAC_PI_4] {
            let r = verify_osc(&derive_ifs(2, alpha, 16).unwrap());
            assert!(r.contained && r.pairwise_disjoint, "{r:?}");
            assert!(r.margin > 0.0);
            assert!(r.height >= r.sample_height);
        }
    }

    #[test]
    fn duplicated_map_fails() {
        let mut ifs = derive_ifs(2, FRAC_PI_2, 16).unwrap();
        ifs.maps[2] = ifs.maps[1];
        let r = verify_osc_at_depth(&ifs, 6);
        assert!(!r.pairwise_disjoint);
    }
}
