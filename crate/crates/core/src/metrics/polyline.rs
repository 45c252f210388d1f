//! Distances from points to polylines.

use super::grid::rect_dist;
use crate::geom::{bounds, Point};
use rayon::prelude::*;

/// Squared distance from `q` to the segment `[a, b]`.
fn segment_dist2(q: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return q.dist2(a);
    }
    let t = ((q - a).dot(ab) / len2).clamp(0.0, 1.0);
    q.dist2(a + ab.scale(t))
}

/// Grid over the segments of a polyline; each segment is listed in every
/// cell its bounding box touches.
#[derive(Debug, Clone)]
pub struct SegmentIndex {
    cell: f64,
    origin: Point,
    nx: usize,
    ny: usize,
    starts: Vec<u32>,
    segs: Vec<u32>,
    points: Vec<Point>,
}

impl SegmentIndex {
    pub fn new(polyline: &[Point]) -> Self {
        assert!(
            !polyline.is_empty(),
            "polyline must have at least one vertex"
        );
        let (lo, hi) = bounds(polyline).expect("non-empty");
        let nseg = polyline.len().saturating_sub(1).max(1);
        let mean_len = polyline.windows(2).map(|w| w[0].dist(w[1])).sum::<f64>() / nseg as f64;
        let extent = (hi.x - lo.x).max(hi.y - lo.y);
        let area_cell = (2.0 * (hi.x - lo.x) * (hi.y - lo.y) / nseg as f64).sqrt();
        let mut cell = area_cell
            .max(2.0 * mean_len)
            .max(2.0 * extent / nseg as f64);
        if cell.is_nan() || cell <= 0.0 {
            cell = 1.0;
        }
        let nx = ((hi.x - lo.x) / cell).floor() as usize + 1;
        let ny = ((hi.y - lo.y) / cell).floor() as usize + 1;
        let cell_of = |p: Point| -> (usize, usize) {
            (
                (((p.x - lo.x) / cell).floor().max(0.0) as usize).min(nx - 1),
                (((p.y - lo.y) / cell).floor().max(0.0) as usize).min(ny - 1),
            )
        };
        let single = [polyline[0], polyline[0]];
        let pairs: Vec<[Point; 2]> = if polyline.len() == 1 {
            vec![single]
        } else {
            polyline.windows(2).map(|w| [w[0], w[1]]).collect()
        };
        let ranges: Vec<(usize, usize, usize, usize)> = pairs
            .iter()
            .map(|[a, b]| {
                let (ax, ay) = cell_of(*a);
                let (bx, by) = cell_of(*b);
                (ax.min(bx), ax.max(bx), ay.min(by), ay.max(by))
            })
            .collect();
        let mut starts = vec![0u32; nx * ny + 1];
        for &(x0, x1, y0, y1) in &ranges {
            for y in y0..=y1 {
                for x in x0..=x1 {
                    starts[y * nx + x + 1] += 1;
                }
            }
        }
        for c in 0..nx * ny {
            starts[c + 1] += starts[c];
        }
        let mut fill = starts.clone();
        let mut segs = vec![0u32; starts[nx * ny] as usize];
        for (s, &(x0, x1, y0, y1)) in ranges.iter().enumerate() {
            for y in y0..=y1 {
                for x in x0..=x1 {
                    let c = y * nx + x;
                    segs[fill[c] as usize] = s as u32;
                    fill[c] += 1;
                }
            }
        }
        let points = pairs.iter().flat_map(|p| *p).collect();
        SegmentIndex {
            cell,
            origin: lo,
            nx,
            ny,
            starts,
            segs,
            points,
        }
    }

    /// Squared distance from `q` to the polyline.
    pub fn nearest_dist2(&self, q: Point) -> f64 {
        let (nx, ny) = (self.nx as i64, self.ny as i64);
        let fx = (q.x - self.origin.x) / self.cell;
        let fy = (q.y - self.origin.y) / self.cell;
        let cx = (fx.floor() as i64).clamp(0, nx - 1);
        let cy = (fy.floor() as i64).clamp(0, ny - 1);
        let mut best = f64::INFINITY;
        let scan = |x: i64, y: i64, best: &mut f64| {
            let c = y as usize * self.nx + x as usize;
            for &s in &self.segs[self.starts[c] as usize..self.starts[c + 1] as usize] {
                let a = self.points[2 * s as usize];
                let b = self.points[2 * s as usize + 1];
                *best = best.min(segment_dist2(q, a, b));
            }
        };
        let mut r = 0i64;
        loop {
            let (x0, x1, y0, y1) = (cx - r, cx + r, cy - r, cy + r);
            for x in x0.max(0)..=x1.min(nx - 1) {
                for y in y0.max(0)..=y1.min(ny - 1) {
                    if r == 0 || x == x0 || x == x1 || y == y0 || y == y1 {
                        scan(x, y, &mut best);
                    }
                }
            }
            let c = self.cell;
            let o = self.origin;
            let gx = (o.x, o.x + nx as f64 * c);
            let gy = (o.y, o.y + ny as f64 * c);
            let mut slabs = [None; 4];
            if x0 > 0 {
                slabs[0] = Some((gx.0, o.x + x0 as f64 * c, gy.0, gy.1));
            }
            if x1 < nx - 1 {
                slabs[1] = Some((o.x + (x1 + 1) as f64 * c, gx.1, gy.0, gy.1));
            }
            if y0 > 0 {
                slabs[2] = Some((gx.0, gx.1, gy.0, o.y + y0 as f64 * c));
            }
            if y1 < ny - 1 {
                slabs[3] = Some((gx.0, gx.1, o.y + (y1 + 1) as f64 * c, gy.1));
            }
            let bound = slabs
                .iter()
                .flatten()
                .map(|&r| rect_dist(q, r))
                .fold(f64::INFINITY, f64::min);
            if bound.is_infinite() {
                return best;
            }
            let bound = (bound * (1.0 - 1e-9)).max(0.0);
            if best <= bound * bound {
                return best;
            }
            r += 1;
        }
    }
}

/// `max_{p ∈ points} d(p, polyline)`.
pub fn directed_to_polyline(points: &[Point], polyline: &SegmentIndex) -> f64 {
    points
        .par_iter()
        .map(|&p| polyline.nearest_dist2(p))
        .reduce(|| 0.0, f64::max)
        .sqrt()
}

/// Symmetric vertex-to-curve distance between two polylines:
/// the larger of the farthest vertex of `x` from the curve `y` and the
/// farthest vertex of `y` from the curve `x`.
///
/// This is the Hausdorff distance of the two curves as compact sets up to
/// at most half a segment length, and it vanishes when both are samplings of
/// one straight segment.
pub fn curve_distance(x: &[Point], y: &[Point]) -> f64 {
    let ix = SegmentIndex::new(x);
    let iy = SegmentIndex::new(y);
    directed_to_polyline(x, &iy).max(directed_to_polyline(y, &ix))
}
