//! Point-set metrics: Hausdorff distance, box counting and the probes that
//! compare curves and attractors with them.

mod boxcount;
mod grid;
mod polyline;
mod probes;

pub use boxcount::{
    box_count, box_count_offset, box_counting_dimension, default_scales, occupancy_floor,
    DimensionReport, GRID_OFFSETS, MIN_OCCUPANCY,
};
pub(crate) use grid::rect_dist;
pub use grid::GridIndex;
pub use polyline::{curve_distance, directed_to_polyline, SegmentIndex};
pub use probes::{continuity_probe, convergence_report, ConvergenceReport, ConvergenceRow};

use crate::error::{domain, Result};
use crate::geom::Point;
use rayon::prelude::*;
use std::sync::atomic::{AtomicU64, Ordering};

/// `max_{a ∈ A} min_{b ∈ B} |a - b|` against a prebuilt index on `B`.
pub fn directed_hausdorff(a: &[Point], b: &GridIndex) -> f64 {
    // A query only matters if it can raise the running maximum, so each
    // search may stop at the first point within it.  Neighbouring queries
    // tend to share a nearest point, which is tried first.  Bit patterns of
    // non-negative floats order like their values.
    let running = AtomicU64::new(0f64.to_bits());
    a.par_chunks(1024).for_each(|chunk| {
        let mut hint: Option<Point> = None;
        for &p in chunk {
            let cutoff = f64::from_bits(running.load(Ordering::Relaxed));
            if hint.is_some_and(|h| p.dist2(h) <= cutoff) {
                continue;
            }
            let (d, near) = b.nearest_above(p, cutoff);
            hint = Some(near);
            if d > cutoff {
                running.fetch_max(d.to_bits(), Ordering::Relaxed);
            }
        }
    });
    f64::from_bits(running.into_inner()).sqrt()
}

/// Hausdorff distance between two finite point sets.
///
/// Both directed distances are computed exactly with grid-bucketed nearest
/// neighbour search, so the result equals the brute-force value bit for bit
/// and is symmetric in its arguments.
pub fn hausdorff_distance(a: &[Point], b: &[Point]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(domain("Hausdorff distance needs non-empty sets"));
    }
    let ib = GridIndex::new(b);
    let ia = GridIndex::new(a);
    Ok(directed_hausdorff(a, &ib).max(directed_hausdorff(b, &ia)))
}
