//! h-polynomials and rook polynomials of lattice-convex polyominoes.
//!
//! For a convex polyomino whose vertex set is a sublattice of `N^2`, the
//! h-polynomial of its toric ring equals the descent distribution over the
//! maximal chains of that lattice. This crate computes it (three independent
//! ways), computes rook polynomials (two ways), implements the map from
//! maximal chains to rook configurations, and sweeps all small fixed
//! polyominoes checking that non-thin instances satisfy `h_2 < r_2`.

pub mod enumerate;
pub mod error;
pub mod hseries;
pub mod lattice;
pub mod lproject;
pub mod poly;
pub mod polyomino;
pub mod rook;
pub mod sweep;

pub use error::{Error, Result};
pub use poly::{HVector, IntPolynomial, RookPolynomial};
pub use polyomino::{classify, parse_grid, vertex_set, CellRef, ClassReport, Point, Polyomino};
