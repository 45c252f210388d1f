//! Generalized Fibonacci word fractals.
//!
//! The crate is organised bottom-up:
//!
//! * [`words`] builds i-Fibonacci words by concatenation and by block
//!   substitution and checks their combinatorial structure.
//! * [`turtle`] draws a word as a planar polyline and measures it.
//! * [`analysis`] holds the closed forms in the drawing angle: scaling
//!   ratio, characteristic roots, aspect limit and Hausdorff dimension.
//! * [`ifs`] derives the five-map iterated function system from the curves,
//!   iterates it, and checks the open set condition.
//! * [`metrics`] provides Hausdorff distance and box counting kernels and
//!   the convergence and continuity probes built on them.
//!
//! Word orders are counted the same way throughout: `f_1 = 0`,
//! `f_2 = 0^{i-1}1`, `f_n = f_{n-1} f_{n-2}`.

pub mod analysis;
pub mod error;
pub mod fmt;
pub mod geom;
pub mod ifs;
pub mod metrics;
pub mod turtle;
pub mod words;

pub use error::{Error, Result};
pub use geom::Point;
