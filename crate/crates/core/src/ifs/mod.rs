//! The five-map iterated function system of the curves.
//!
//! Every self-similar curve splits into five parts, four scaled copies of the
//! curve three orders down and one of the curve six orders down.  In the
//! limit the parts are images of the whole under five similarities
//! `ψ_1..ψ_5` with ratios `R, R, R², R, R`.  [`derive_ifs`] recovers the maps
//! by fitting junction landmarks, [`attractor`] iterates them and
//! [`verify_osc`] checks the open set condition on a bounding trapezoid.

mod attractor;
mod osc;

pub use attractor::{attractor, attractor_budget, attractor_with};
pub use osc::{verify_osc, OscReport};

use crate::error::{domain, Error, Result};
use crate::fmt::g17;
use crate::geom::Point;
use crate::metrics::GridIndex;
use crate::turtle::{
    canonical_order, canonical_residue, check_alpha, draw_symbols, draw_with, ChordAlgebra,
    TurnConvention,
};
use crate::words::{five_partite, swap_last_two, word_concat, Symbols};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::SQRT_2;

/// Planar similarity `x ↦ t + scale · e^{i·rotation} · M(x)`, where `M` is
/// the mirror `(x, y) ↦ (x, -y)` when `reflect` is set and the identity
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Similarity {
    pub scale: f64,
    pub rotation: f64,
    pub reflect: bool,
    pub tx: f64,
    pub ty: f64,
}

impl Similarity {
    pub const IDENTITY: Similarity = Similarity {
        scale: 1.0,
        rotation: 0.0,
        reflect: false,
        tx: 0.0,
        ty: 0.0,
    };

    /// Builds the map `x ↦ t + a · M(x)` from its complex coefficients.
    pub fn from_complex(a: Complex64, reflect: bool, t: Complex64) -> Self {
        Similarity {
            scale: a.norm(),
            rotation: a.arg(),
            reflect,
            tx: t.re,
            ty: t.im,
        }
    }

    /// `scale · e^{i·rotation}`.
    pub fn linear(&self) -> Complex64 {
        Complex64::from_polar(self.scale, self.rotation)
    }

    pub fn translation(&self) -> Complex64 {
        Complex64::new(self.tx, self.ty)
    }

    #[inline]
    pub fn apply_c(&self, z: Complex64) -> Complex64 {
        let z = if self.reflect { z.conj() } else { z };
        self.translation() + self.linear() * z
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::from(self.apply_c(p.into()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Similarity) -> Similarity {
        let (a1, t1) = (self.linear(), self.translation());
        let (a2, t2) = (other.linear(), other.translation());
        let (a2m, t2m) = if self.reflect {
            (a2.conj(), t2.conj())
        } else {
            (a2, t2)
        };
        Similarity::from_complex(a1 * a2m, self.reflect ^ other.reflect, t1 + a1 * t2m)
    }

    pub fn inverse(&self) -> Similarity {
        // y = t + a M(x)  =>  M(x) = (y - t)/a  =>  x = M((y - t)/a).
        let inv = 1.0 / self.linear();
        let t = -self.translation() * inv;
        if self.reflect {
            Similarity::from_complex(inv.conj(), true, t.conj())
        } else {
            Similarity::from_complex(inv, false, t)
        }
    }

    /// The unique fixed point of a contraction.
    pub fn fixed_point(&self) -> Point {
        let a = self.linear();
        let t = self.translation();
        let z = if self.reflect {
            (t + a * t.conj()) / (1.0 - a.norm_sqr())
        } else {
            t / (1.0 - a)
        };
        Point::from(z)
    }
}

/// Least-squares similarity carrying `src` onto `dst`, trying both mirror
/// options and keeping the one with the smaller RMS landmark error.
pub fn fit_similarity(src: &[Point], dst: &[Point]) -> Result<(Similarity, f64)> {
    if src.len() != dst.len() {
        return Err(domain("landmark sets differ in size"));
    }
    if src.len() < 3 {
        return Err(domain("similarity fit needs at least three landmarks"));
    }
    if is_collinear(src) {
        return Err(Error::Degenerate("source landmarks are collinear".into()));
    }
    let y: Vec<Complex64> = dst.iter().map(|&p| p.into()).collect();
    let fit = |reflect: bool| {
        let x: Vec<Complex64> = src
            .iter()
            .map(|&p| {
                if reflect {
                    Complex64::from(p).conj()
                } else {
                    p.into()
                }
            })
            .collect();
        let n = x.len() as f64;
        let mx = x.iter().sum::<Complex64>() / n;
        let my = y.iter().sum::<Complex64>() / n;
        let num: Complex64 = x
            .iter()
            .zip(&y)
            .map(|(&a, &b)| (a - mx).conj() * (b - my))
            .sum();
        let den: f64 = x.iter().map(|&a| (a - mx).norm_sqr()).sum();
        let a = num / den;
        let t = my - a * mx;
        let sq: f64 = x
            .iter()
            .zip(&y)
            .map(|(&a_, &b)| (t + a * a_ - b).norm_sqr())
            .sum();
        (Similarity::from_complex(a, reflect, t), (sq / n).sqrt())
    };
    let plain = fit(false);
    let mirrored = fit(true);
    Ok(if mirrored.1 < plain.1 {
        mirrored
    } else {
        plain
    })
}

/// Whether the points span no area, judged by the smaller principal
/// variance relative to the larger.
pub fn is_collinear(points: &[Point]) -> bool {
    let n = points.len() as f64;
    let cx = points.iter().map(|p| p.x).sum::<f64>() / n;
    let cy = points.iter().map(|p| p.y).sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for p in points {
        let (dx, dy) = (p.x - cx, p.y - cy);
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    let tr = sxx + syy;
    let det = sxx * syy - sxy * sxy;
    let disc = ((tr * tr / 4.0) - det).max(0.0).sqrt();
    let big = tr / 2.0 + disc;
    let small = det / big.max(f64::MIN_POSITIVE);
    big == 0.0 || small <= 1e-24 * big
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(i: u64) -> Self {
        if i % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Smallest family index with this parity.
    pub fn representative(self) -> u64 {
        match self {
            Parity::Even => 2,
            Parity::Odd => 3,
        }
    }
}

/// Five similarities in the canonical frame: the curve starts at the origin
/// and its chord has length √2.
#[derive(Debug, Clone, PartialEq)]
pub struct Ifs {
    pub alpha: f64,
    pub parity: Parity,
    pub maps: [Similarity; 5],
}

#[derive(Serialize, Deserialize)]
struct IfsJson {
    alpha: f64,
    parity: Parity,
    maps: Vec<Similarity>,
}

impl Ifs {
    /// The two chord endpoints: the fixed points of the first and last maps.
    pub fn seeds(&self) -> [Point; 2] {
        [self.maps[0].fixed_point(), self.maps[4].fixed_point()]
    }

    pub fn scales(&self) -> [f64; 5] {
        self.maps.map(|m| m.scale)
    }

    /// Scales sorted ascending.
    pub fn sorted_scales(&self) -> [f64; 5] {
        let mut s = self.scales();
        s.sort_by(f64::total_cmp);
        s
    }

    /// JSON `{alpha, parity, maps: [{scale, rotation, reflect, tx, ty}]}`
    /// with 17 significant digits.
    pub fn to_json(&self) -> String {
        let maps: Vec<String> = self
            .maps
            .iter()
            .map(|m| {
                format!(
                    "    {{\"scale\": {}, \"rotation\": {}, \"reflect\": {}, \"tx\": {}, \"ty\": {}}}",
                    g17(m.scale),
                    g17(m.rotation),
                    m.reflect,
                    g17(m.tx),
                    g17(m.ty)
                )
            })
            .collect();
        let parity = match self.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
        };
        format!(
            "{{\n  \"alpha\": {},\n  \"parity\": \"{parity}\",\n  \"maps\": [\n{}\n  ]\n}}\n",
            g17(self.alpha),
            maps.join(",\n")
        )
    }

    pub fn from_json(text: &str) -> Result<Ifs> {
        let raw: IfsJson =
            serde_json::from_str(text).map_err(|e| domain(format!("invalid IFS JSON: {e}")))?;
        let maps: [Similarity; 5] = raw
            .maps
            .try_into()
            .map_err(|v: Vec<Similarity>| domain(format!("IFS needs 5 maps, found {}", v.len())))?;
        Ok(Ifs {
            alpha: raw.alpha,
            parity: raw.parity,
            maps,
        })
    }
}

/// Extra periods of six orders added to `n_ref` before landmarks are taken.
pub const EXTRA_PERIODS: u64 = 30;

/// Diagnostics of one derivation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Derivation {
    /// Order of the drawn reference curve.
    pub n_ref: u64,
    /// Order at which the landmarks were evaluated.
    pub n_landmarks: u64,
    /// RMS landmark residual of each fit, in canonical units.
    pub fit_residuals: [f64; 5],
    /// Largest distance between a part of the drawn reference curve and the
    /// predicted placement of its template, relative to the curve diameter.
    pub reference_deviation: f64,
    /// True when the landmarks were collinear (α = 0) and the two-point
    /// chord maps were used.
    pub chord_fallback: bool,
}

/// Default reference order: the second self-similar order of the family.
pub fn default_n_ref(i: u64) -> u64 {
    canonical_order(i, 2)
}

/// Derives the IFS of family `i` at angle `alpha` from reference order `n_ref`.
pub fn derive_ifs(i: u64, alpha: f64, n_ref: u64) -> Result<Ifs> {
    derive_ifs_report(i, alpha, n_ref).map(|(ifs, _)| ifs)
}

/// [`derive_ifs`] with its diagnostics.
///
/// The drawn reference curve of order `n_ref` is split into its five parts
/// and each part is checked against the standalone drawing of its word under
/// the placement predicted by the chord algebra.  The maps are fitted from
/// the six junction landmarks of the whole curve to the six junction
/// landmarks of each part, evaluated exactly at order
/// `n_ref + 6·EXTRA_PERIODS`, where finite-order defects are far below
/// rounding.
pub fn derive_ifs_report(i: u64, alpha: f64, n_ref: u64) -> Result<(Ifs, Derivation)> {
    derive_with_convention(i, alpha, n_ref, TurnConvention::EvenLeft)
}

/// Like [`derive_ifs_report`], but draws the reference curve with the given
/// turn convention while predicting placements with the numbered rule.  With
/// [`TurnConvention::OddLeft`] this is the negative control: the reference
/// check fails.
pub fn derive_with_convention(
    i: u64,
    alpha: f64,
    n_ref: u64,
    reference_convention: TurnConvention,
) -> Result<(Ifs, Derivation)> {
    check_alpha(alpha)?;
    if n_ref % 6 != canonical_residue(i) || n_ref < 10 {
        return Err(domain(format!(
            "n_ref must be >= 10 and ≡ {} (mod 6) for i = {i}, got {n_ref}",
            canonical_residue(i)
        )));
    }
    let reference_deviation = reference_check(i, alpha, n_ref, reference_convention)?;
    if reference_deviation > 1e-6 {
        return Err(Error::SelfSimilarity(format!(
            "parts of the order-{n_ref} curve deviate from their templates by {reference_deviation:.3e} of the diameter"
        )));
    }

    let n = n_ref + 6 * EXTRA_PERIODS;
    let alg = ChordAlgebra::new(i, alpha, n)?;
    let whole = alg.junctions(n)?;
    let parts = alg.part_junctions(n)?;
    let s = SQRT_2 / whole[5].norm();
    let norm = |p: Point| p.scale(s);
    let whole: Vec<Point> = whole.iter().map(|&p| norm(p)).collect();

    let mut maps = [Similarity::IDENTITY; 5];
    let mut fit_residuals = [0.0; 5];
    let chord_fallback = is_collinear(&whole);
    for k in 0..5 {
        let target: Vec<Point> = parts[k].iter().map(|&p| norm(p)).collect();
        if chord_fallback {
            maps[k] = chord_map(whole[0], whole[5], target[0], target[5]);
            fit_residuals[k] = rms(&whole, &target, &maps[k]);
        } else {
            let (m, r) = fit_similarity(&whole, &target)?;
            maps[k] = m;
            fit_residuals[k] = r;
        }
        if fit_residuals[k] > 1e-6 * SQRT_2 {
            return Err(Error::SelfSimilarity(format!(
                "landmark fit of part {} has residual {:.3e}",
                k + 1,
                fit_residuals[k]
            )));
        }
    }
    let ifs = Ifs {
        alpha,
        parity: Parity::of(i),
        maps,
    };
    let report = Derivation {
        n_ref,
        n_landmarks: n,
        fit_residuals,
        reference_deviation,
        chord_fallback,
    };
    Ok((ifs, report))
}

fn chord_map(a: Point, b: Point, c: Point, d: Point) -> Similarity {
    let (a, b, c, d): (Complex64, Complex64, Complex64, Complex64) =
        (a.into(), b.into(), c.into(), d.into());
    let lin = (d - c) / (b - a);
    Similarity::from_complex(lin, false, c - lin * a)
}

fn rms(src: &[Point], dst: &[Point], m: &Similarity) -> f64 {
    let sq: f64 = src
        .iter()
        .zip(dst)
        .map(|(&p, &q)| m.apply(p).dist2(q))
        .sum();
    (sq / src.len() as f64).sqrt()
}

/// Draws the order-`n` curve with `convention`, splits it into its five
/// parts, and returns the largest distance between a part and the predicted
/// placement of its template, relative to the curve's diameter.
pub fn reference_check(i: u64, alpha: f64, n: u64, convention: TurnConvention) -> Result<f64> {
    let layout = five_partite(i, n)?;
    let word = word_concat(i, n)?;
    let curve = draw_with(&word, alpha, 1.0, convention)?;
    let alg = ChordAlgebra::new(i, alpha, n)?;
    let places = alg.placements(n)?;
    let diameter = crate::geom::bbox_diagonal(&curve.points).max(1.0);
    let mut worst = 0.0f64;
    for ((range, kind), place) in layout.parts.iter().zip(layout.kinds).zip(places) {
        let template: Symbols = {
            let w = word_concat(i, kind.order())?;
            if kind.is_swapped() {
                swap_last_two(w.symbols())
            } else {
                w.into_symbols()
            }
        };
        let (tpl, _) = draw_symbols(&template, alpha, 1.0, TurnConvention::EvenLeft)?;
        let part = &curve.points[range.start..=range.end];
        for (p, q) in tpl.iter().zip(part) {
            worst = worst.max(place.apply(alpha, *p).dist(*q));
        }
    }
    Ok(worst / diameter)
}

/// `d_H(ψ_1(A) ∪ … ∪ ψ_5(A), A)`.
///
/// Computed against a single index on `A`: for the image side, each `ψ_k(a)`
/// is queried against `A`; for the other side,
/// `d(a, ψ_k(A)) = scale_k · d(ψ_k^{-1}(a), A)`.  No image set is stored.
pub fn invariance_residual(ifs: &Ifs, a: &[Point]) -> Result<f64> {
    if a.len() < 2 {
        return Err(domain("invariance residual needs at least two points"));
    }
    let index = GridIndex::new(a);
    let inverses = ifs.maps.map(|m| m.inverse());
    let forward = a
        .par_iter()
        .map(|&p| {
            ifs.maps
                .iter()
                .map(|m| index.nearest_dist2(m.apply(p)))
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max)
        .sqrt();
    let (lo, hi) = crate::geom::bounds(a).expect("non-empty");
    let bbox = (lo.x, hi.x, lo.y, hi.y);
    let backward = a
        .par_iter()
        .map(|&p| {
            // Visit maps by the bounding-box lower bound and stop once no
            // remaining map can improve on the best distance.
            let mut cand: [(f64, usize); 5] = [(0.0, 0); 5];
            for (k, inv) in inverses.iter().enumerate() {
                let q = inv.apply(p);
                cand[k] = (ifs.maps[k].scale * crate::metrics::rect_dist(q, bbox), k);
            }
            cand.sort_by(|x, y| x.0.total_cmp(&y.0));
            let mut best = f64::INFINITY;
            for (lb, k) in cand {
                if lb >= best {
                    break;
                }
                let d = ifs.maps[k].scale * index.nearest_dist2(inverses[k].apply(p)).sqrt();
                best = best.min(d);
            }
            best
        })
        .reduce(|| 0.0, f64::max);
    Ok(forward.max(backward))
}

/// Vertices of the order-`n` curve scaled so the chord has length √2, with
/// the first vertex at the origin and the drawn orientation kept.
pub fn normalized_curve(i: u64, n: u64, alpha: f64) -> Result<Vec<Point>> {
    let curve = crate::turtle::draw(&word_concat(i, n)?, alpha, 1.0)?;
    let w = curve.last().norm();
    if w == 0.0 {
        return Err(Error::Degenerate(format!("curve of order {n} is closed")));
    }
    let s = SQRT_2 / w;
    Ok(curve.points.into_iter().map(|p| p.scale(s)).collect())
}
