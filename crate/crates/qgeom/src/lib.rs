//! Exhaustive desk-scale verification of discrete Fourier analysis,
//! orthogonal projections, and incidence geometry over finite fields.
//!
//! Everything is checked exactly (in Z[zeta_p] or big-rational arithmetic)
//! wherever the underlying statement is exact; floating point appears only
//! for real-exponent norms, at fixed tolerances.

pub mod cyclotomic;
pub mod gf;
pub mod incidence;
pub mod projections;
pub mod report;
pub mod setfile;
pub mod spectral;
pub mod suites;
pub mod threads;
pub mod vecspace;
