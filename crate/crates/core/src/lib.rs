//! Exact computation of topological-vertex partition functions on strip
//! geometries, together with the symmetric-function, integrable-hierarchy
//! and q-difference structure they carry.
//!
//! All arithmetic is exact over the formal variable `v = q^{1/2}`.

pub mod error;
pub mod hierarchy;
pub mod partitions;
pub mod qalgebra;
pub mod report;
pub mod schur;
pub mod vertex;
pub mod waves;
pub mod web;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use qalgebra::{LaurentPoly, MultiSeries, QRational, SeriesContext};
pub use report::Report;

use num_rational::BigRational;

/// Laurent polynomials in `v` with rational coefficients.
pub type VPoly = LaurentPoly<BigRational>;

/// Truncated series (in Kähler parameters and spectral variables) whose
/// coefficients are rational functions of `v`.
pub type QSeries = MultiSeries<QRational>;

/// Polynomials in the KP times with rational coefficients.
pub type TimesPoly = MultiSeries<BigRational>;
