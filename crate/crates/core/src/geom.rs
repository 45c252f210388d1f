//! Planar points and convex-polygon predicates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Squared distance, computed the same way everywhere so that
    /// accelerated and brute-force searches agree bit for bit.
    #[inline]
    pub fn dist2(self, o: Point) -> f64 {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        dx * dx + dy * dy
    }

    /// Counter-clockwise normal.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn scale(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    fn mul(self, p: Point) -> Point {
        p.scale(self)
    }
}

impl From<Complex64> for Point {
    fn from(z: Complex64) -> Self {
        Point::new(z.re, z.im)
    }
}

impl From<Point> for Complex64 {
    fn from(p: Point) -> Self {
        Complex64::new(p.x, p.y)
    }
}

/// Axis-aligned bounding box as `(min, max)`; `None` for an empty slice.
pub fn bounds(points: &[Point]) -> Option<(Point, Point)> {
    let first = *points.first()?;
    let mut lo = first;
    let mut hi = first;
    for p in &points[1..] {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    Some((lo, hi))
}

/// Diameter of the axis-aligned bounding box, a cheap proxy for the set
/// diameter used to scale tolerances.
pub fn bbox_diagonal(points: &[Point]) -> f64 {
    bounds(points).map_or(0.0, |(lo, hi)| lo.dist(hi))
}

fn project(poly: &[Point], axis: Point) -> (f64, f64) {
    poly.iter()
        .map(|p| p.dot(axis))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        })
}

/// Convex hull in counter-clockwise order (Andrew's monotone chain);
/// collinear boundary points are dropped.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if (b - a).cross(p - a) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Largest distance between two points of the set.
pub fn diameter(points: &[Point]) -> f64 {
    let hull = convex_hull(points);
    let mut best = 0.0f64;
    for (k, a) in hull.iter().enumerate() {
        for b in &hull[k + 1..] {
            best = best.max(a.dist2(*b));
        }
    }
    best.sqrt()
}

/// Separating-axis clearance between two convex polygons.
///
/// Returns the largest gap between the projections over all edge normals of
/// both polygons.  A positive value means the polygons are disjoint with at
/// least that clearance; a negative value is the smallest overlap depth, so
/// interiors intersect exactly when the result is negative.
pub fn sat_clearance(a: &[Point], b: &[Point]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for poly in [a, b] {
        let m = poly.len();
        for k in 0..m {
            let e = poly[(k + 1) % m] - poly[k];
            let len = e.norm();
            if len == 0.0 {
                continue;
            }
            let axis = e.perp().scale(1.0 / len);
            let (alo, ahi) = project(a, axis);
            let (blo, bhi) = project(b, axis);
            let gap = (blo - ahi).max(alo - bhi);
            best = best.max(gap);
        }
    }
    best
}

/// Signed area (positive for counter-clockwise order).
pub fn signed_area(poly: &[Point]) -> f64 {
    let m = poly.len();
    (0..m)
        .map(|k| poly[k].cross(poly[(k + 1) % m]))
        .sum::<f64>()
        / 2.0
}

/// Smallest inward distance of any point of `inner` from the edges of the
/// convex polygon `outer`.  Non-negative exactly when every point lies in the
/// closed polygon; the orientation of `outer` may be either way.
pub fn containment_margin(outer: &[Point], inner: &[Point]) -> f64 {
    let orient = signed_area(outer).signum();
    let m = outer.len();
    let mut best = f64::INFINITY;
    for k in 0..m {
        let a = outer[k];
        let e = outer[(k + 1) % m] - a;
        let len = e.norm();
        if len == 0.0 {
            continue;
        }
        for &p in inner {
            let d = orient * e.cross(p - a) / len;
            best = best.min(d);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(x: f64, y: f64, s: f64) -> Vec<Point> {
        vec![
            Point::new(x, y),
            Point::new(x + s, y),
            Point::new(x + s, y + s),
            Point::new(x, y + s),
        ]
    }

    #[test]
    fn sat_distinguishes_touching_overlapping_and_apart() {
        let a = square(0.0, 0.0, 1.0);
        assert_eq!(sat_clearance(&a, &square(1.0, 0.0, 1.0)), 0.0);
        assert!((sat_clearance(&a, &square(0.5, 0.0, 1.0)) + 0.5).abs() < 1e-15);
        assert!((sat_clearance(&a, &square(3.0, 0.0, 1.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn sat_finds_diagonal_separation() {
        let a = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        let b = square(0.6, 0.6, 1.0);
        assert!(sat_clearance(&a, &b) > 0.0);
    }

    #[test]
    fn containment_is_orientation_independent() {
        let outer = square(0.0, 0.0, 2.0);
        let inner = square(0.5, 0.5, 1.0);
        let mut rev = outer.clone();
        rev.reverse();
        assert!((containment_margin(&outer, &inner) - 0.5).abs() < 1e-15);
        assert!((containment_margin(&rev, &inner) - 0.5).abs() < 1e-15);
        assert!(containment_margin(&outer, &square(1.5, 0.5, 1.0)) < 0.0);
    }

    #[test]
    fn hull_and_diameter() {
        let mut pts = square(0.0, 0.0, 2.0);
        pts.push(Point::new(1.0, 1.0));
        pts.push(Point::new(1.0, 0.0));
        assert_eq!(convex_hull(&pts).len(), 4);
        assert!((diameter(&pts) - 8f64.sqrt()).abs() < 1e-15);
        let line = [
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(0.0, 3.0),
        ];
        assert_eq!(diameter(&line), 3.0);
        assert_eq!(diameter(&[Point::new(2.0, 2.0)]), 0.0);
    }

    #[test]
    fn complex_round_trip() {
        let p = Point::new(1.5, -2.0);
        let z: Complex64 = p.into();
        assert_eq!(Point::from(z), p);
    }
}
