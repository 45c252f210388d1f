//! Deterministic iteration of the IFS.

use super::Ifs;
use crate::error::{domain, Result};
use crate::geom::Point;
use rayon::prelude::*;

/// `V_d` from `V_0` = the chord endpoints, with
/// `V_{k+1} = ψ_1(V_k) ++ … ++ ψ_5(V_k)`.
///
/// The result has `2·5^d` points (duplicates kept) in that canonical order,
/// independent of the number of worker threads.
pub fn attractor(ifs: &Ifs, depth: u32) -> Vec<Point> {
    attractor_with(ifs, &ifs.seeds(), depth)
}

/// [`attractor`] started from arbitrary seed points.
pub fn attractor_with(ifs: &Ifs, seeds: &[Point], depth: u32) -> Vec<Point> {
    let mut v = seeds.to_vec();
    for _ in 0..depth {
        let len = v.len();
        let mut next = vec![Point::ORIGIN; 5 * len];
        next.par_chunks_mut(len.max(1))
            .enumerate()
            .for_each(|(k, out)| {
                let m = &ifs.maps[k];
                for (dst, &src) in out.iter_mut().zip(&v) {
                    *dst = m.apply(src);
                }
            });
        v = next;
    }
    v
}

/// The deepest `V_d` with at most `budget` points, and that depth.
pub fn attractor_budget(ifs: &Ifs, budget: usize) -> Result<(Vec<Point>, u32)> {
    if budget < 2 {
        return Err(domain("attractor budget must be at least 2 points"));
    }
    let mut depth = 0u32;
    let mut count = 2usize;
    while let Some(next) = count.checked_mul(5) {
        if next > budget {
            break;
        }
        count = next;
        depth += 1;
    }
    Ok((attractor(ifs, depth), depth))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::derive_ifs;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn counts_and_seeds() {
        let ifs = derive_ifs(2, FRAC_PI_2, 16).unwrap();
        let v0 = attractor(&ifs, 0);
        assert_eq!(v0, ifs.seeds().to_vec());
        assert_eq!(attractor(&ifs, 1).len(), 10);
        assert_eq!(attractor(&ifs, 4).len(), 2 * 625);
    }

    #[test]
    fn canonical_order_is_depth_first_by_outer_map() {
        let ifs = derive_ifs(2, 0.8, 16).unwrap();
        let v1 = attractor(&ifs, 1);
        let v2 = attractor(&ifs, 2);
        for k in 0..5 {
            for (j, p) in v1.iter().enumerate() {
                let q = v2[k * v1.len() + j];
                assert!(ifs.maps[k].apply(*p).dist(q) < 1e-15);
            }
        }
    }

    #[test]
    fn budget_mode() {
        let ifs = derive_ifs(2, FRAC_PI_2, 16).unwrap();
        let (v, d) = attractor_budget(&ifs, 300).unwrap();
        assert_eq!((v.len(), d), (250, 3));
        let (v, d) = attractor_budget(&ifs, 2).unwrap();
        assert_eq!((v.len(), d), (2, 0));
        assert!(attractor_budget(&ifs, 1).is_err());
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let ifs = derive_ifs(3, 1.0, 14).unwrap();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| attractor(&ifs, 6));
        let b = four.install(|| attractor(&ifs, 6));
        assert_eq!(a, b);
    }
}
