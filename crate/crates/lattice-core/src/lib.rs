//! Exact planar lattices, sublattice quotients and reciprocal cells.
//!
//! Generators are stored as numbers `a + b/√3` with rational `a`, `b`, which
//! covers the square and hexagonal lattices and all of their sublattices used
//! by the filter banks. Frequency-domain lattices are stored in units of π.

pub mod cell;
pub mod error;
pub mod hnf;
pub mod lattice;
pub mod qsqrt3;

pub use cell::{CellKind, Facet, GridFacet, ReciprocalCell};
pub use error::{LatticeError, LatticeResult};
pub use hnf::IMat2;
pub use lattice::{
    coset_reps, common_sublattice, intersection, quotient_index, Domain, Lattice2, Mat2, QuotientReps, Vec2,
};
pub use qsqrt3::QSqrt3;

/// Real frequency of the grid point `(u, v)/n` given in coordinates of `dual`.
pub fn grid_frequency(dual: &Lattice2, u: i64, v: i64, n: i64) -> [f64; 2] {
    let e = dual.generators_f64();
    let (x, y) = (u as f64 / n as f64, v as f64 / n as f64);
    [e[0][0] * x + e[0][1] * y, e[1][0] * x + e[1][1] * y]
}
