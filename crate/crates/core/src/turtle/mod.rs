//! Turtle drawing of words and the geometry of the resulting curves.
//!
//! The turtle starts at the origin heading up (π/2).  Symbol `j` (1-based)
//! draws one segment, then a `0` turns by `+α` at even `j` and by `-α` at
//! odd `j`; a `1` goes straight.  The heading is tracked as an integer turn
//! count `k` and evaluated as `π/2 + kα`, so long curves do not drift.
//!
//! Curve orders: with words counted from `f_1 = 0`, the curves whose endpoints sit on
//! adjacent corners of the bounding box, and whose chord turns by `-α` every
//! three orders, are the orders `n ≡ 4 (mod 6)` for even `i` and
//! `n ≡ 2 (mod 6)` for odd `i`.  [`canonical_order`] enumerates them.  In
//! the `f_0 = 0` indexing common in the literature these are orders
//! `6k + 5` and `6k + 3`.

mod chord;
pub mod export;

pub use chord::{ChordAlgebra, Placement};

use crate::error::{domain, Result};
use crate::geom::{bounds, sat_clearance, Point};
use crate::words::{five_partite, word_concat, FivePartite, SymbolSlice, Word};
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// Heading of the first segment, `a(∅)`.
pub const INITIAL_HEADING: f64 = FRAC_PI_2;

/// Which position parity turns left on a `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TurnConvention {
    /// Even positions turn `+α`, odd positions `-α` (the numbered drawing rule).
    #[default]
    EvenLeft,
    /// Odd positions turn `+α`, even positions `-α`; mirrors every curve.
    OddLeft,
}

impl TurnConvention {
    /// Turn, in units of α, applied after symbol `symbol` at 1-based position `j`.
    #[inline]
    pub fn turn(self, symbol: bool, j: usize) -> i64 {
        if symbol {
            return 0;
        }
        let even = j % 2 == 0;
        match (self, even) {
            (TurnConvention::EvenLeft, true) | (TurnConvention::OddLeft, false) => 1,
            _ => -1,
        }
    }
}

pub fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=FRAC_PI_2).contains(&alpha) {
        Ok(())
    } else {
        Err(domain(format!("drawing angle {alpha} is outside [0, π/2]")))
    }
}

/// Unit heading vectors `π/2 + kα`, memoized per turn count.
struct Headings {
    alpha: f64,
    offset: i64,
    table: Vec<Option<Point>>,
}

impl Headings {
    fn new(alpha: f64) -> Self {
        Headings {
            alpha,
            offset: 64,
            table: vec![None; 129],
        }
    }

    #[inline]
    fn get(&mut self, k: i64) -> Point {
        let idx = k + self.offset;
        if idx >= 0 && (idx as usize) < self.table.len() {
            if let Some(p) = self.table[idx as usize] {
                return p;
            }
            let p = heading(self.alpha, k);
            self.table[idx as usize] = Some(p);
            p
        } else {
            heading(self.alpha, k)
        }
    }
}

/// Unit vector at angle `π/2 + kα`.  Components within 1e-15 of zero are
/// snapped to zero so that headings on the coordinate axes are exact and
/// lattice curves (α = 0 or π/2) keep integer coordinates.
pub(crate) fn heading(alpha: f64, k: i64) -> Point {
    let (s, c) = (k as f64 * alpha).sin_cos();
    let snap = |v: f64| if v.abs() < 1e-15 { 0.0 } else { v };
    Point::new(snap(-s), snap(c))
}

/// Provenance of a drawn curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveMeta {
    pub i: u64,
    pub n: u64,
    pub alpha: f64,
    pub unit: f64,
    /// Net turn count after the last symbol; the final heading is `π/2 + turns·α`.
    pub turns: i64,
    pub convention: TurnConvention,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<Point>,
    pub meta: Option<CurveMeta>,
}

impl Polyline {
    pub fn from_points(points: Vec<Point>) -> Self {
        Polyline { points, meta: None }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> Point {
        self.points[0]
    }

    pub fn last(&self) -> Point {
        self.points[self.points.len() - 1]
    }
}

/// Draws `symbols` with the given convention and returns the vertices and
/// the final turn count.
pub fn draw_symbols(
    symbols: &SymbolSlice,
    alpha: f64,
    unit: f64,
    convention: TurnConvention,
) -> Result<(Vec<Point>, i64)> {
    check_alpha(alpha)?;
    if !(unit > 0.0 && unit.is_finite()) {
        return Err(domain(format!("unit length {unit} must be positive")));
    }
    let mut headings = Headings::new(alpha);
    let mut points = Vec::with_capacity(symbols.len() + 1);
    let mut pos = Point::ORIGIN;
    let mut k = 0i64;
    points.push(pos);
    for (idx, s) in symbols.iter().by_vals().enumerate() {
        let d = headings.get(k);
        pos = Point::new(pos.x + unit * d.x, pos.y + unit * d.y);
        points.push(pos);
        k += convention.turn(s, idx + 1);
    }
    Ok((points, k))
}

pub fn draw_with(w: &Word, alpha: f64, unit: f64, convention: TurnConvention) -> Result<Polyline> {
    let (points, turns) = draw_symbols(w.symbols(), alpha, unit, convention)?;
    let meta = CurveMeta {
        i: w.i(),
        n: w.n(),
        alpha,
        unit,
        turns,
        convention,
    };
    Ok(Polyline {
        points,
        meta: Some(meta),
    })
}

/// Draws a word with the numbered drawing rule.
pub fn draw(w: &Word, alpha: f64, unit: f64) -> Result<Polyline> {
    draw_with(w, alpha, unit, TurnConvention::EvenLeft)
}

/// Net turn count of `symbols`, in units of α.
pub fn turn_count(symbols: &SymbolSlice, convention: TurnConvention) -> i64 {
    symbols
        .iter()
        .by_vals()
        .enumerate()
        .map(|(idx, s)| convention.turn(s, idx + 1))
        .sum()
}

/// Final heading `a(w)` of the turtle after drawing `symbols`.
pub fn net_angle(symbols: &SymbolSlice, alpha: f64) -> f64 {
    net_angle_with(symbols, alpha, TurnConvention::EvenLeft)
}

pub fn net_angle_with(symbols: &SymbolSlice, alpha: f64, convention: TurnConvention) -> f64 {
    INITIAL_HEADING + turn_count(symbols, convention) as f64 * alpha
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveStats {
    /// Distance from the first to the last vertex.
    pub width: f64,
    /// Largest distance of a vertex from the chord line.
    pub height: f64,
    /// `width / height`, `+∞` when the curve is flat.
    pub aspect: f64,
    /// Final heading in radians.
    pub net_angle: f64,
}

impl CurveStats {
    pub fn is_flat(&self) -> bool {
        self.aspect.is_infinite()
    }
}

fn finish_stats(width: f64, height: f64, net_angle: f64) -> CurveStats {
    let aspect = if height < 1e-12 * width || height == 0.0 {
        f64::INFINITY
    } else {
        width / height
    };
    CurveStats {
        width,
        height,
        aspect,
        net_angle,
    }
}

fn chord_height(points: impl Iterator<Item = Point>, first: Point, last: Point) -> f64 {
    let chord = last - first;
    let w = chord.norm();
    if w == 0.0 {
        return points.map(|p| p.dist(first)).fold(0.0, f64::max);
    }
    let u = chord.scale(1.0 / w);
    points.map(|p| u.cross(p - first).abs()).fold(0.0, f64::max)
}

/// Width, height, aspect and net angle of a polyline.
///
/// For polylines without provenance the net angle is the direction of the
/// last segment.
pub fn curve_stats(p: &Polyline) -> Result<CurveStats> {
    if p.points.len() < 2 {
        return Err(domain("curve statistics need at least two points"));
    }
    let first = p.first();
    let last = p.last();
    let width = first.dist(last);
    let height = chord_height(p.points.iter().copied(), first, last);
    let net = match p.meta {
        Some(m) => INITIAL_HEADING + m.turns as f64 * m.alpha,
        None => {
            let d = last - p.points[p.points.len() - 2];
            d.y.atan2(d.x)
        }
    };
    Ok(finish_stats(width, height, net))
}

/// [`curve_stats`] of the drawing of `w`, computed in two streaming passes
/// without storing the vertices.
pub fn word_stats(
    w: &Word,
    alpha: f64,
    unit: f64,
    convention: TurnConvention,
) -> Result<CurveStats> {
    check_alpha(alpha)?;
    if w.is_empty() {
        return Err(domain("curve statistics need at least two points"));
    }
    let mut headings = Headings::new(alpha);
    let walk = |headings: &mut Headings, visit: &mut dyn FnMut(Point)| -> i64 {
        let mut pos = Point::ORIGIN;
        let mut k = 0i64;
        visit(pos);
        for (idx, s) in w.symbols().iter().by_vals().enumerate() {
            let d = headings.get(k);
            pos = Point::new(pos.x + unit * d.x, pos.y + unit * d.y);
            visit(pos);
            k += convention.turn(s, idx + 1);
        }
        k
    };
    let mut last = Point::ORIGIN;
    let turns = walk(&mut headings, &mut |p| last = p);
    let first = Point::ORIGIN;
    let width = first.dist(last);
    let mut height = 0.0f64;
    let u = if width > 0.0 {
        (last - first).scale(1.0 / width)
    } else {
        Point::ORIGIN
    };
    walk(&mut headings, &mut |p| {
        let h = if width > 0.0 {
            u.cross(p - first).abs()
        } else {
            p.dist(first)
        };
        height = height.max(h);
    });
    Ok(finish_stats(
        width,
        height,
        INITIAL_HEADING + turns as f64 * alpha,
    ))
}

/// Lengths, in segments, of the maximal straight runs of a polyline.
pub fn straight_runs(points: &[Point]) -> Vec<usize> {
    let mut runs = Vec::new();
    if points.len() < 2 {
        return runs;
    }
    let mut current = 1;
    for w in points.windows(3) {
        let a = w[1] - w[0];
        let b = w[2] - w[1];
        let same = a.cross(b).abs() <= 1e-9 * a.norm() * b.norm() && a.dot(b) > 0.0;
        if same {
            current += 1;
        } else {
            runs.push(current);
            current = 1;
        }
    }
    runs.push(current);
    runs
}

/// Rectangle aligned to a unit axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrientedBox {
    pub center: Point,
    /// Unit vector along the box's first side.
    pub axis: Point,
    /// Half extent along `axis`.
    pub half_along: f64,
    /// Half extent along the perpendicular of `axis`.
    pub half_across: f64,
}

impl OrientedBox {
    /// Smallest rectangle aligned to `axis` containing `points`.
    pub fn around(points: &[Point], axis: Point) -> Self {
        let axis = axis.scale(1.0 / axis.norm());
        let across = axis.perp();
        let (mut lo_a, mut hi_a, mut lo_c, mut hi_c) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for p in points {
            let a = p.dot(axis);
            let c = p.dot(across);
            lo_a = lo_a.min(a);
            hi_a = hi_a.max(a);
            lo_c = lo_c.min(c);
            hi_c = hi_c.max(c);
        }
        let ca = (lo_a + hi_a) / 2.0;
        let cc = (lo_c + hi_c) / 2.0;
        OrientedBox {
            center: axis.scale(ca) + across.scale(cc),
            axis,
            half_along: (hi_a - lo_a) / 2.0,
            half_across: (hi_c - lo_c) / 2.0,
        }
    }

    /// Box aligned to the chord from the first to the last point; an open
    /// curve with coincident ends falls back to the x axis.
    pub fn chord_aligned(points: &[Point]) -> Self {
        let chord = points[points.len() - 1] - points[0];
        let axis = if chord.norm() > 0.0 {
            chord
        } else {
            Point::new(1.0, 0.0)
        };
        Self::around(points, axis)
    }

    /// Corners in counter-clockwise order.
    pub fn corners(&self) -> [Point; 4] {
        let a = self.axis.scale(self.half_along);
        let c = self.axis.perp().scale(self.half_across);
        [
            self.center - a - c,
            self.center + a - c,
            self.center + a + c,
            self.center - a + c,
        ]
    }

    pub fn diagonal(&self) -> f64 {
        2.0 * self.half_along.hypot(self.half_across)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisjointReport {
    pub disjoint: bool,
    /// First pair (0-based, lexicographic) whose interiors intersect.
    pub first_violation: Option<(usize, usize)>,
    /// Smallest separating-axis clearance over all pairs (negative on overlap).
    pub min_clearance: f64,
}

/// Pairwise interior-disjointness of boxes by the separating-axis test with
/// tolerance `1e-9 ×` the largest diagonal; touching boundaries are allowed.
pub fn boxes_disjoint(boxes: &[OrientedBox]) -> DisjointReport {
    let scale = boxes.iter().map(OrientedBox::diagonal).fold(0.0, f64::max);
    let tol = 1e-9 * scale;
    let corners: Vec<[Point; 4]> = boxes.iter().map(OrientedBox::corners).collect();
    let mut first_violation = None;
    let mut min_clearance = f64::INFINITY;
    for a in 0..boxes.len() {
        for b in a + 1..boxes.len() {
            let gap = sat_clearance(&corners[a], &corners[b]);
            min_clearance = min_clearance.min(gap);
            if gap < -tol && first_violation.is_none() {
                first_violation = Some((a, b));
            }
        }
    }
    DisjointReport {
        disjoint: first_violation.is_none(),
        first_violation,
        min_clearance,
    }
}

/// The five sub-curves of an order-`n` curve and their chord-aligned boxes.
#[derive(Debug, Clone)]
/// The five sub-curves of a curve with their bounding boxes.  Each box is
/// aligned with the chord of the part's `f` template as placed in the whole
/// curve, so an `l` part shares the frame of the `f` part it replaces.
pub struct SubCurves {
    pub layout: FivePartite,
    pub whole: Polyline,
    pub parts: Vec<Polyline>,
    pub boxes: Vec<OrientedBox>,
}

pub fn subcurves(i: u64, n: u64, alpha: f64) -> Result<SubCurves> {
    subcurves_with(i, n, alpha, TurnConvention::EvenLeft)
}

pub fn subcurves_with(i: u64, n: u64, alpha: f64, convention: TurnConvention) -> Result<SubCurves> {
    check_alpha(alpha)?;
    let layout = five_partite(i, n)?;
    let word = word_concat(i, n)?;
    let whole = draw_with(&word, alpha, 1.0, convention)?;
    let parts: Vec<Polyline> = layout
        .parts
        .iter()
        .map(|r| Polyline::from_points(whole.points[r.start..=r.end].to_vec()))
        .collect();
    let algebra = chord::ChordAlgebra::with_convention(i, alpha, n, convention)?;
    let places = algebra.placements(n)?;
    let boxes = parts
        .iter()
        .zip(places.iter().zip(layout.kinds))
        .map(|(p, (place, kind))| {
            let axis = place.apply(alpha, algebra.endpoint(kind.order())) - place.start;
            if axis.norm() > 0.0 {
                OrientedBox::around(&p.points, axis)
            } else {
                OrientedBox::chord_aligned(&p.points)
            }
        })
        .collect();
    Ok(SubCurves {
        layout,
        whole,
        parts,
        boxes,
    })
}

/// Residue of the self-similar curve orders modulo 6.
pub fn canonical_residue(i: u64) -> u64 {
    if i % 2 == 0 {
        4
    } else {
        2
    }
}

pub fn is_canonical_order(i: u64, n: u64) -> bool {
    n % 6 == canonical_residue(i)
}

/// The `k`-th self-similar order, `6k + 4` for even `i` and `6k + 2` for odd `i`.
pub fn canonical_order(i: u64, k: u64) -> u64 {
    6 * k + canonical_residue(i)
}

/// Whether the first and last vertices of the α = π/2 curve coincide, within
/// `1e-9`, with two adjacent corners of its axis-aligned bounding box.
///
/// For even `i` this holds at every canonical order.  For odd `i` the limit
/// curve is rotated by π/4 and finite curves never meet the corners exactly;
/// see [`corner_defect`].
pub fn endpoints_on_box(i: u64, n: u64) -> Result<bool> {
    if !is_canonical_order(i, n) {
        return Err(domain(format!(
            "endpoints_on_box needs n ≡ {} (mod 6) for i = {i}, got n = {n}",
            canonical_residue(i)
        )));
    }
    let curve = draw(&word_concat(i, n)?, FRAC_PI_2, 1.0)?;
    Ok(corner_defect_in_frame(&curve.points, 0.0) <= 1e-9)
}

/// Distance of the endpoints from the nearest pair of adjacent corners of the
/// bounding box taken in the limit frame (axis-aligned for even `i`, rotated
/// by π/4 for odd `i`), relative to the box diagonal, at α = π/2.
pub fn corner_defect(i: u64, n: u64) -> Result<f64> {
    let curve = draw(&word_concat(i, n)?, FRAC_PI_2, 1.0)?;
    let rot = if i % 2 == 0 {
        0.0
    } else {
        std::f64::consts::FRAC_PI_4
    };
    let diag = {
        let (lo, hi) = bounds(&rotate_all(&curve.points, -rot)).expect("curve is non-empty");
        lo.dist(hi)
    };
    Ok(corner_defect_in_frame(&curve.points, rot) / diag)
}

fn rotate_all(points: &[Point], angle: f64) -> Vec<Point> {
    let (s, c) = angle.sin_cos();
    points
        .iter()
        .map(|p| Point::new(c * p.x - s * p.y, s * p.x + c * p.y))
        .collect()
}

/// Largest distance of an endpoint from its assigned corner, minimized over
/// assignments of the two endpoints to adjacent corners of the box aligned to
/// the frame rotated by `rot`.
fn corner_defect_in_frame(points: &[Point], rot: f64) -> f64 {
    let q = rotate_all(points, -rot);
    let (lo, hi) = bounds(&q).expect("curve is non-empty");
    let corners = [lo, Point::new(hi.x, lo.y), hi, Point::new(lo.x, hi.y)];
    let (a, b) = (q[0], q[q.len() - 1]);
    (0..4)
        .flat_map(|c| [(c, (c + 1) % 4), ((c + 1) % 4, c)])
        .map(|(ca, cb)| a.dist(corners[ca]).max(b.dist(corners[cb])))
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_symbols;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI, SQRT_2};

    fn close(a: Point, b: Point) -> bool {
        a.dist(b) < 1e-12
    }

    #[test]
    fn draw_examples() {
        let (p, _) =
            draw_symbols(&parse_symbols("0").unwrap(), 0.7, 1.0, Default::default()).unwrap();
        assert!(close(p[0], Point::ORIGIN) && close(p[1], Point::new(0.0, 1.0)));

        let (p, _) = draw_symbols(
            &parse_symbols("01").unwrap(),
            FRAC_PI_2,
            1.0,
            Default::default(),
        )
        .unwrap();
        assert!(close(p[1], Point::new(0.0, 1.0)));
        assert!(close(p[2], Point::new(1.0, 1.0)));

        let c = draw(&word_concat(2, 12).unwrap(), 0.0, 1.0).unwrap();
        let s = curve_stats(&c).unwrap();
        assert_eq!(s.height, 0.0);
        assert!(s.is_flat());
    }

    #[test]
    fn draw_rejects_bad_arguments() {
        let w = word_concat(2, 4).unwrap();
        assert!(draw(&w, -0.1, 1.0).is_err());
        assert!(draw(&w, 1.6, 1.0).is_err());
        assert!(draw(&w, 0.3, 0.0).is_err());
    }

    #[test]
    fn net_angle_examples() {
        let empty = parse_symbols("").unwrap();
        assert_eq!(net_angle(&empty, 0.4), FRAC_PI_2);
        assert_eq!(net_angle(&parse_symbols("1111").unwrap(), 0.4), FRAC_PI_2);
        let f5 = word_concat(2, 5).unwrap();
        assert!((net_angle(f5.symbols(), 0.3) - (FRAC_PI_2 + 0.3)).abs() < 1e-15);
        assert!(
            (net_angle_with(f5.symbols(), 0.3, TurnConvention::OddLeft) - (FRAC_PI_2 - 0.3)).abs()
                < 1e-15
        );
    }

    #[test]
    fn stats_examples() {
        let p = Polyline::from_points(vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
        ]);
        let s = curve_stats(&p).unwrap();
        assert!((s.width - SQRT_2).abs() < 1e-15);
        assert!((s.height - SQRT_2 / 2.0).abs() < 1e-15);
        let seg = Polyline::from_points(vec![Point::ORIGIN, Point::new(0.0, 1.0)]);
        let s = curve_stats(&seg).unwrap();
        assert_eq!((s.width, s.height), (1.0, 0.0));
        assert!(curve_stats(&Polyline::from_points(vec![Point::ORIGIN])).is_err());
    }

    #[test]
    fn streaming_stats_match_stored() {
        for (i, n, alpha) in [(2, 16, FRAC_PI_2), (3, 14, FRAC_PI_3), (4, 13, 0.2)] {
            let w = word_concat(i, n).unwrap();
            let a = curve_stats(&draw(&w, alpha, 1.0).unwrap()).unwrap();
            let b = word_stats(&w, alpha, 1.0, TurnConvention::EvenLeft).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn oriented_box_contains_points() {
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 2.0),
            Point::new(3.0, 1.0),
        ];
        let b = OrientedBox::chord_aligned(&pts);
        let c = b.corners();
        assert!(crate::geom::containment_margin(&c, &pts) > -1e-12);
    }

    #[test]
    fn boxes_disjoint_examples() {
        let a = OrientedBox {
            center: Point::new(0.5, 0.5),
            axis: Point::new(1.0, 0.0),
            half_along: 0.5,
            half_across: 0.5,
        };
        let b = OrientedBox {
            center: Point::new(1.5, 0.5),
            ..a
        };
        assert!(boxes_disjoint(&[a, b]).disjoint);
        let r = boxes_disjoint(&[a, b, a]);
        assert!(!r.disjoint);
        assert_eq!(r.first_violation, Some((0, 2)));
    }

    #[test]
    fn subcurve_vertex_counts() {
        let s = subcurves(2, 11, FRAC_PI_2).unwrap();
        let f8 = crate::words::fib_length(2, 8).unwrap() as usize;
        let f5 = crate::words::fib_length(2, 5).unwrap() as usize;
        let counts: Vec<usize> = s.parts.iter().map(Polyline::len).collect();
        assert_eq!(counts, [f8 + 1, f8 + 1, f5 + 1, f8 + 1, f8 + 1]);
        for k in 0..4 {
            assert_eq!(s.parts[k].last(), s.parts[k + 1].first());
        }
        assert!(subcurves(2, 6, FRAC_PI_2).is_err());
    }

    #[test]
    fn endpoints_on_box_examples() {
        assert_eq!(endpoints_on_box(2, 4), Ok(true));
        assert_eq!(endpoints_on_box(2, 10), Ok(true));
        assert_eq!(endpoints_on_box(4, 16), Ok(true));
        assert!(endpoints_on_box(2, 5).is_err());
        assert!(endpoints_on_box(3, 9).is_err());
    }

    #[test]
    fn canonical_orders() {
        assert_eq!(canonical_order(2, 1), 10);
        assert_eq!(canonical_order(3, 2), 14);
        assert!(is_canonical_order(2, 16) && is_canonical_order(3, 20));
        assert!(!is_canonical_order(2, 17));
    }

    #[test]
    fn straight_runs_of_a_staircase() {
        let w = word_concat(2, 10).unwrap();
        let c = draw(&w, FRAC_PI_4, 1.0).unwrap();
        let runs = straight_runs(&c.points);
        assert_eq!(runs.iter().sum::<usize>(), w.len());
        assert!(runs.iter().all(|&r| r == 1 || r == 2));
    }

    #[test]
    fn canonical_even_boxes_are_disjoint() {
        for n in [10, 16, 22] {
            for alpha in [0.3, PI / 6.0, PI / 4.0, PI / 3.0, 1.4, FRAC_PI_2] {
                let s = subcurves(2, n, alpha).unwrap();
                let r = boxes_disjoint(&s.boxes);
                assert!(r.disjoint, "n={n} alpha={alpha} {r:?}");
            }
        }
    }

    #[test]
    fn odd_family_overlap_shrinks_relative_to_size() {
        let rel = |n| {
            let s = subcurves(3, n, FRAC_PI_2).unwrap();
            let r = boxes_disjoint(&s.boxes);
            let d = s
                .boxes
                .iter()
                .map(OrientedBox::diagonal)
                .fold(0.0, f64::max);
            (-r.min_clearance).max(0.0) / d
        };
        let (a, b, c) = (rel(8), rel(14), rel(20));
        assert!(a > 2.0 * b && b > 2.0 * c && c < 2e-2, "{a} {b} {c}");
    }

    #[test]
    fn off_residue_boxes_overlap() {
        assert!(!boxes_disjoint(&subcurves(2, 17, FRAC_PI_2).unwrap().boxes).disjoint);
    }
}
