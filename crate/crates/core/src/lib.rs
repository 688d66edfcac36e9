//! Exact q-series engine for partition Eisenstein traces.
//!
//! The crate computes truncated `q`-expansions of Eisenstein series and their
//! partition traces, crank moments, expansions of the Jacobi theta function and
//! torsional Eisenstein series, and numeric lattice sums, together with
//! checkers that compare independent routes to the same series.

pub mod bivariate;
pub mod crank;
pub mod cyclotomic;
pub mod eisenstein;
pub mod error;
pub mod jacobi;
pub mod lattice;
pub mod partitions;
pub mod ring;
pub mod series;
pub mod verify;

pub use bivariate::{BiSeries, OuterVar, ZSeries};
pub use cyclotomic::{cyclo_ring, zeta_power, Conductor, Cyclo};
pub use error::{Error, Result};
pub use partitions::{Partition, PartitionWeight};
pub use ring::{CoefficientRing, Rational, RootsOfUnity};
pub use series::{eta_pochhammer, Discrepancy, QSeries};
