//! Uniform grid over a point set for exact nearest-neighbour queries.

use crate::geom::{bounds, Point};

/// Points bucketed into square cells of side `cell`; the point `(x, y)` lives
/// in cell `(floor(x/cell), floor(y/cell))`.
///
/// Buckets are stored in compressed row form over the cells spanned by the
/// set's bounding box.
#[derive(Debug, Clone)]
pub struct GridIndex {
    cell: f64,
    /// Cell coordinates of the lower-left bucket.
    ix0: i64,
    iy0: i64,
    nx: usize,
    ny: usize,
    /// `starts[c]..starts[c + 1]` indexes `points` for bucket `c = iy·nx + ix`.
    starts: Vec<u32>,
    points: Vec<Point>,
}

impl GridIndex {
    /// Builds an index with a cell size chosen for about two points per
    /// occupied cell.
    pub fn new(points: &[Point]) -> Self {
        Self::with_cell(points, Self::auto_cell(points))
    }

    fn auto_cell(points: &[Point]) -> f64 {
        let Some((lo, hi)) = bounds(points) else {
            return 1.0;
        };
        let (w, h) = (hi.x - lo.x, hi.y - lo.y);
        let n = points.len() as f64;
        let extent = w.max(h);
        if extent == 0.0 {
            return 1.0;
        }
        // Area-based size for 2D sets, length-based for thin ones.
        (2.0 * w * h / n).sqrt().max(2.0 * extent / n)
    }

    pub fn with_cell(points: &[Point], cell: f64) -> Self {
        assert!(cell > 0.0 && cell.is_finite(), "cell size must be positive");
        assert!(
            points.len() < u32::MAX as usize,
            "too many points for a grid index"
        );
        let (lo, hi) = bounds(points).unwrap_or((Point::ORIGIN, Point::ORIGIN));
        let ix0 = (lo.x / cell).floor() as i64;
        let iy0 = (lo.y / cell).floor() as i64;
        let nx = ((hi.x / cell).floor() as i64 - ix0 + 1) as usize;
        let ny = ((hi.y / cell).floor() as i64 - iy0 + 1) as usize;
        let key = |p: &Point| -> usize {
            let ix = ((p.x / cell).floor() as i64 - ix0).clamp(0, nx as i64 - 1) as usize;
            let iy = ((p.y / cell).floor() as i64 - iy0).clamp(0, ny as i64 - 1) as usize;
            iy * nx + ix
        };
        let mut starts = vec![0u32; nx * ny + 1];
        for p in points {
            starts[key(p) + 1] += 1;
        }
        for c in 0..nx * ny {
            starts[c + 1] += starts[c];
        }
        let mut fill = starts.clone();
        let mut sorted = vec![Point::ORIGIN; points.len()];
        for p in points {
            let c = key(p);
            sorted[fill[c] as usize] = *p;
            fill[c] += 1;
        }
        GridIndex {
            cell,
            ix0,
            iy0,
            nx,
            ny,
            starts,
            points: sorted,
        }
    }

    pub fn cell(&self) -> f64 {
        self.cell
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points of bucket `(ix, iy)` in absolute cell coordinates.
    pub fn bucket(&self, ix: i64, iy: i64) -> &[Point] {
        let (x, y) = (ix - self.ix0, iy - self.iy0);
        if x < 0 || y < 0 || x >= self.nx as i64 || y >= self.ny as i64 {
            return &[];
        }
        let c = y as usize * self.nx + x as usize;
        &self.points[self.starts[c] as usize..self.starts[c + 1] as usize]
    }

    /// Number of non-empty buckets.
    pub fn occupied(&self) -> usize {
        self.starts.windows(2).filter(|w| w[1] > w[0]).count()
    }

    fn local_bucket(&self, x: usize, y: usize) -> &[Point] {
        let c = y * self.nx + x;
        &self.points[self.starts[c] as usize..self.starts[c + 1] as usize]
    }

    /// Squared distance from `q` to the nearest indexed point (`+∞` when
    /// the index is empty).
    ///
    /// Searches square rings of cells around `q`'s cell until no unvisited
    /// cell can hold a closer point, so the result is the exact minimum of
    /// [`Point::dist2`] over the set.
    pub fn nearest_dist2(&self, q: Point) -> f64 {
        self.nearest_above(q, -1.0).0
    }

    /// Like [`nearest_dist2`](Self::nearest_dist2), but may stop as soon as
    /// some point within squared distance `cutoff2` is found.  The result is
    /// exact whenever it exceeds `cutoff2`; otherwise it is the squared
    /// distance to some point and at most `cutoff2`.  The point attaining the
    /// returned distance comes with it.
    pub fn nearest_above(&self, q: Point, cutoff2: f64) -> (f64, Point) {
        if self.points.is_empty() {
            return (f64::INFINITY, q);
        }
        let (nx, ny) = (self.nx as i64, self.ny as i64);
        let cx = ((q.x / self.cell).floor() as i64 - self.ix0).clamp(0, nx - 1);
        let cy = ((q.y / self.cell).floor() as i64 - self.iy0).clamp(0, ny - 1);
        let mut best = (f64::INFINITY, q);
        let scan = |x: i64, y: i64, best: &mut (f64, Point)| {
            for p in self.local_bucket(x as usize, y as usize) {
                let d = q.dist2(*p);
                if d < best.0 {
                    *best = (d, *p);
                }
            }
        };
        let mut r = 0i64;
        loop {
            let (x0, x1, y0, y1) = (cx - r, cx + r, cy - r, cy + r);
            if best.0 <= cutoff2 {
                return best;
            }
            if r == 0 {
                scan(cx, cy, &mut best);
            } else {
                for x in x0.max(0)..=x1.min(nx - 1) {
                    if y0 >= 0 {
                        scan(x, y0, &mut best);
                    }
                    if y1 < ny {
                        scan(x, y1, &mut best);
                    }
                }
                for y in (y0 + 1).max(0)..=(y1 - 1).min(ny - 1) {
                    if x0 >= 0 {
                        scan(x0, y, &mut best);
                    }
                    if x1 < nx {
                        scan(x1, y, &mut best);
                    }
                }
            }
            // Lower bound on the distance to any unvisited cell: the distance
            // from q to each slab of the grid beyond a side of the visited
            // block.  Sides on the grid boundary have nothing beyond.
            let c = self.cell;
            let gx = ((self.ix0 as f64) * c, ((self.ix0 + nx) as f64) * c);
            let gy = ((self.iy0 as f64) * c, ((self.iy0 + ny) as f64) * c);
            let mut slabs = [None; 4];
            if x0 > 0 {
                slabs[0] = Some((gx.0, (self.ix0 + x0) as f64 * c, gy.0, gy.1));
            }
            if x1 < nx - 1 {
                slabs[1] = Some(((self.ix0 + x1 + 1) as f64 * c, gx.1, gy.0, gy.1));
            }
            if y0 > 0 {
                slabs[2] = Some((gx.0, gx.1, gy.0, (self.iy0 + y0) as f64 * c));
            }
            if y1 < ny - 1 {
                slabs[3] = Some((gx.0, gx.1, (self.iy0 + y1 + 1) as f64 * c, gy.1));
            }
            let bound = slabs
                .iter()
                .flatten()
                .map(|&r| rect_dist(q, r))
                .fold(f64::INFINITY, f64::min);
            if bound.is_infinite() {
                return best;
            }
            // Shrink slightly so rounding in the cell assignment cannot
            // cut the search short.
            let bound = (bound * (1.0 - 1e-9)).max(0.0);
            if best.0 <= bound * bound {
                return best;
            }
            r += 1;
        }
    }

    /// Distance from `q` to the nearest indexed point.
    pub fn nearest_dist(&self, q: Point) -> f64 {
        self.nearest_dist2(q).sqrt()
    }
}

/// Distance from `q` to the rectangle `[xa, xb] × [ya, yb]`.
pub(crate) fn rect_dist(q: Point, (xa, xb, ya, yb): (f64, f64, f64, f64)) -> f64 {
    let dx = (xa - q.x).max(q.x - xb).max(0.0);
    let dy = (ya - q.y).max(q.y - yb).max(0.0);
    dx.hypot(dy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_point_in_exactly_one_bucket() {
        let pts: Vec<Point> = (0..200)
            .map(|k| Point::new((k as f64 * 0.37).sin() * 3.0, (k as f64 * 0.11).cos()))
            .collect();
        let g = GridIndex::with_cell(&pts, 0.25);
        let mut total = 0;
        for ix in -20..20 {
            for iy in -10..10 {
                for p in g.bucket(ix, iy) {
                    assert_eq!(
                        ((p.x / 0.25).floor() as i64, (p.y / 0.25).floor() as i64),
                        (ix, iy)
                    );
                }
                total += g.bucket(ix, iy).len();
            }
        }
        assert_eq!(total, pts.len());
    }

    #[test]
    fn far_query_and_degenerate_sets() {
        let g = GridIndex::new(&[Point::new(3.0, 4.0)]);
        assert_eq!(g.nearest_dist(Point::ORIGIN), 5.0);
        let line: Vec<Point> = (0..10).map(|k| Point::new(0.0, k as f64)).collect();
        let g = GridIndex::new(&line);
        assert_eq!(
            g.nearest_dist(Point::new(-2.0, 4.5)),
            (4.0f64 + 0.25).sqrt()
        );
        assert_eq!(
            GridIndex::new(&[]).nearest_dist2(Point::ORIGIN),
            f64::INFINITY
        );
    }

    #[test]
    fn queries_far_outside_match_brute_force() {
        let pts: Vec<Point> = (0..5000)
            .map(|k| {
                let t = k as f64 * 0.001;
                Point::new(t, (t * 40.0).sin() * 0.01)
            })
            .collect();
        let g = GridIndex::new(&pts);
        for k in 0..100 {
            let q = Point::new(-30.0 + k as f64 * 0.7, 5.0 * (k as f64).cos());
            let brute = pts
                .iter()
                .map(|p| q.dist2(*p))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(g.nearest_dist2(q), brute);
        }
    }
}
