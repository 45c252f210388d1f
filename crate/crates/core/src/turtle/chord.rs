//! Exact chord algebra of the curves.
//!
//! For every order `m` the table stores the chord `C_m` of the drawing of
//! `f_m` started at heading π/2 and position parity 0, its net turn count
//! `K_m` and the parity of `|f_m|`.  Drawing a word from heading index `K`
//! and odd start position flips the sign of every turn, which mirrors the
//! drawing across the initial heading.  Hence
//!
//! ```text
//! C_m = C_{m-1} + e^{iK_{m-1}α} · M^{P_{m-1}}(C_{m-2})
//! K_m = K_{m-1} ± K_{m-2}
//! ```
//!
//! with `M(z) = -conj(z)` and the sign of `K_{m-2}` flipped when `P_{m-1}` is
//! odd.  This evaluates chords and five-partite junctions at orders far
//! beyond what can be drawn, with no error growth beyond rounding.

use super::{check_alpha, draw_symbols, TurnConvention};
use crate::error::{domain, Result};
use crate::geom::Point;
use crate::words::{word_concat, FivePartite, PartKind};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
struct Entry {
    chord: Complex64,
    turns: i64,
    /// `|f_m| mod 2`.
    parity: u8,
    /// Last two symbols, when `|f_m| >= 2`.
    tail: Option<[bool; 2]>,
    last: bool,
}

/// Where a part is drawn: `start + e^{i·turns·α} · M^{mirrored}(template)`,
/// with the template drawn from the origin at heading π/2.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    pub start: Point,
    pub turns: i64,
    pub mirrored: bool,
}

fn unit_turn(alpha: f64, k: i64) -> Complex64 {
    let h = super::heading(alpha, k);
    Complex64::new(h.y, -h.x)
}

impl Placement {
    pub fn apply(&self, alpha: f64, p: Point) -> Point {
        let z = Complex64::from(p);
        let z = if self.mirrored { -z.conj() } else { z };
        Point::from(Complex64::from(self.start) + unit_turn(alpha, self.turns) * z)
    }
}

#[derive(Debug, Clone)]
pub struct ChordAlgebra {
    i: u64,
    alpha: f64,
    convention: TurnConvention,
    /// `entries[m - 1]` describes order `m`.
    entries: Vec<Entry>,
}

impl ChordAlgebra {
    /// Tabulates orders `1..=n_max` with the numbered drawing rule.
    pub fn new(i: u64, alpha: f64, n_max: u64) -> Result<Self> {
        Self::with_convention(i, alpha, n_max, TurnConvention::EvenLeft)
    }

    pub fn with_convention(
        i: u64,
        alpha: f64,
        n_max: u64,
        convention: TurnConvention,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        if n_max < 2 {
            return Err(domain("chord table needs n_max >= 2"));
        }
        let mut entries = Vec::with_capacity(n_max as usize);
        for m in 1..=2u64 {
            let w = word_concat(i, m)?;
            let (pts, turns) = draw_symbols(w.symbols(), alpha, 1.0, convention)?;
            let s = w.symbols();
            let len = s.len();
            entries.push(Entry {
                chord: Complex64::from(pts[len]),
                turns,
                parity: (len % 2) as u8,
                tail: (len >= 2).then(|| [s[len - 2], s[len - 1]]),
                last: s[len - 1],
            });
        }
        for m in 3..=n_max as usize {
            let a = entries[m - 2];
            let b = entries[m - 3];
            let (cb, kb) = if a.parity == 1 {
                (-b.chord.conj(), -b.turns)
            } else {
                (b.chord, b.turns)
            };
            let tail = match b.tail {
                Some(t) => Some(t),
                None => Some([a.last, b.last]),
            };
            entries.push(Entry {
                chord: a.chord + unit_turn(alpha, a.turns) * cb,
                turns: a.turns + kb,
                parity: (a.parity + b.parity) % 2,
                tail,
                last: b.last,
            });
        }
        Ok(ChordAlgebra {
            i,
            alpha,
            convention,
            entries,
        })
    }

    pub fn i(&self) -> u64 {
        self.i
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn max_order(&self) -> u64 {
        self.entries.len() as u64
    }

    fn entry(&self, m: u64) -> &Entry {
        assert!(
            m >= 1 && m <= self.max_order(),
            "order {m} outside the chord table"
        );
        &self.entries[m as usize - 1]
    }

    /// Last vertex of the standalone drawing of `f_m`.
    pub fn endpoint(&self, m: u64) -> Point {
        Point::from(self.entry(m).chord)
    }

    /// Net turn count of `f_m`.
    pub fn turns(&self, m: u64) -> i64 {
        self.entry(m).turns
    }

    /// `|f_m| mod 2`.
    pub fn parity(&self, m: u64) -> u8 {
        self.entry(m).parity
    }

    /// `e^{ikα}`, snapped like the drawing headings.
    fn e(&self, k: i64) -> Complex64 {
        unit_turn(self.alpha, k)
    }

    /// Chord and turn count of the standalone drawing of `f_m`, or of `l_m`
    /// (last two symbols swapped) when `swapped` is set.
    fn template(&self, m: u64, swapped: bool) -> (Complex64, i64) {
        let e = self.entry(m);
        if !swapped {
            return (e.chord, e.turns);
        }
        let [a, b] = e.tail.expect("l_m needs |f_m| >= 2");
        // 1-based positions of the last two symbols, reduced to their parity.
        let j1 = if e.parity == 0 { 1 } else { 2 };
        let j2 = j1 + 1;
        let t = |s: bool, j: usize| self.convention.turn(s, j);
        let k0 = e.turns - t(a, j1) - t(b, j2);
        let up = Complex64::i();
        let two = |x: bool| up * self.e(k0) + up * self.e(k0 + t(x, j1));
        let chord = e.chord - two(a) + two(b);
        (chord, k0 + t(b, j1) + t(a, j2))
    }

    /// Chord and final turn count of `f_m` (or `l_m`) drawn from heading
    /// index `k` with start-position parity `p`.
    fn placed(&self, m: u64, swapped: bool, k: i64, p: u8) -> (Complex64, i64) {
        let (c, t) = self.template(m, swapped);
        let (c, t) = if p == 1 { (-c.conj(), -t) } else { (c, t) };
        (self.e(k) * c, k + t)
    }

    /// Chord of `l_m`, the drawing of `f_m` with its last two symbols swapped.
    pub fn swapped_endpoint(&self, m: u64) -> Point {
        Point::from(self.template(m, true).0)
    }

    /// Placements of the five parts of `f_m`, in the frame of the whole curve.
    pub fn placements(&self, m: u64) -> Result<[Placement; 5]> {
        let kinds = self.kinds(m)?;
        let mut z = Complex64::new(0.0, 0.0);
        let mut k = 0i64;
        let mut p = 0u8;
        let mut out = [Placement {
            start: Point::ORIGIN,
            turns: 0,
            mirrored: false,
        }; 5];
        for (slot, kind) in out.iter_mut().zip(kinds) {
            *slot = Placement {
                start: Point::from(z),
                turns: k,
                mirrored: p == 1,
            };
            let (c, k2) = self.placed(kind.order(), kind.is_swapped(), k, p);
            z += c;
            k = k2;
            p = (p + self.parity(kind.order())) % 2;
        }
        Ok(out)
    }

    fn kinds(&self, m: u64) -> Result<[PartKind; 5]> {
        if m < 7 || m > self.max_order() {
            return Err(domain(format!(
                "junctions need 7 <= m <= {}, got {m}",
                self.max_order()
            )));
        }
        Ok(FivePartite::kinds_for(m))
    }

    /// Start point, the four interior part boundaries and the end point of
    /// `f_m` drawn from `origin`, heading index `k`, parity `p`.
    fn junctions_from(&self, m: u64, origin: Complex64, k: i64, p: u8) -> Result<[Complex64; 6]> {
        let kinds = self.kinds(m)?;
        let mut pts = [origin; 6];
        let (mut z, mut k, mut p) = (origin, k, p);
        for (idx, kind) in kinds.iter().enumerate() {
            let (c, k2) = self.placed(kind.order(), kind.is_swapped(), k, p);
            z += c;
            pts[idx + 1] = z;
            k = k2;
            p = (p + self.parity(kind.order())) % 2;
        }
        Ok(pts)
    }

    /// The six junction landmarks of `f_m` in its own frame.
    pub fn junctions(&self, m: u64) -> Result<[Point; 6]> {
        Ok(self
            .junctions_from(m, Complex64::new(0.0, 0.0), 0, 0)?
            .map(Point::from))
    }

    /// For each of the five parts of `f_m`, that part's own six junction
    /// landmarks, in the frame of the whole curve.  The end landmark of an
    /// `l` part is the end of `l`, not of `f`.
    pub fn part_junctions(&self, m: u64) -> Result<[[Point; 6]; 5]> {
        let kinds = self.kinds(m)?;
        let places = self.placements(m)?;
        let mut out = [[Point::ORIGIN; 6]; 5];
        for ((slot, kind), pl) in out.iter_mut().zip(kinds).zip(places) {
            let pts = self.junctions_at(kind.order(), kind.is_swapped(), pl)?;
            *slot = pts;
        }
        Ok(out)
    }

    fn junctions_at(&self, m: u64, swapped: bool, pl: Placement) -> Result<[Point; 6]> {
        let origin = Complex64::from(pl.start);
        let p = pl.mirrored as u8;
        let mut pts = self.junctions_from(m, origin, pl.turns, p)?;
        if swapped {
            pts[5] = origin + self.placed(m, true, pl.turns, p).0;
        }
        Ok(pts.map(Point::from))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::turtle::draw;
    use crate::words::swap_last_two;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn chords_match_drawings() {
        for i in 2..=5 {
            for alpha in [0.0, 0.37, 1.1, FRAC_PI_2] {
                let alg = ChordAlgebra::new(i, alpha, 22).unwrap();
                for m in 1..=22 {
                    let c = draw(&word_concat(i, m).unwrap(), alpha, 1.0).unwrap();
                    let scale = 1.0 + c.last().norm();
                    assert!(
                        alg.endpoint(m).dist(c.last()) < 1e-12 * scale,
                        "i={i} m={m}"
                    );
                    assert_eq!(alg.turns(m), c.meta.unwrap().turns);
                }
            }
        }
    }

    #[test]
    fn swapped_chords_match_drawings() {
        for i in 2..=4 {
            let alg = ChordAlgebra::new(i, 0.8, 18).unwrap();
            for m in 2..=18 {
                let w = swap_last_two(word_concat(i, m).unwrap().symbols());
                let (pts, _) = draw_symbols(&w, 0.8, 1.0, TurnConvention::EvenLeft).unwrap();
                let end = pts[pts.len() - 1];
                assert!(alg.swapped_endpoint(m).dist(end) < 1e-12 * (1.0 + end.norm()));
            }
        }
    }

    #[test]
    fn junctions_match_drawn_boundaries() {
        for i in [2, 3] {
            let alpha = 0.9;
            let alg = ChordAlgebra::new(i, alpha, 16).unwrap();
            let w = word_concat(i, 16).unwrap();
            let c = draw(&w, alpha, 1.0).unwrap();
            let fp = FivePartite::layout(i, 16).unwrap();
            let j = alg.junctions(16).unwrap();
            assert_eq!(j[0], Point::ORIGIN);
            for (k, r) in fp.parts.iter().enumerate() {
                assert!(j[k + 1].dist(c.points[r.end]) < 1e-9);
            }
        }
    }
}
