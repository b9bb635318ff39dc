//! Highest weight vectors of symmetric and alternating tensor powers,
//! indexed by tables, together with the combinatorics they rest on:
//! Kronecker coefficients, coefficient-matrix ranks, boundary relations,
//! Latin hypercubes and the Cayley form and hyperdeterminant.

pub mod combinatorics;
pub mod error;
pub mod signature;

pub use error::{Error, Result};
pub mod coeff;
pub mod expansion;
pub mod hwv;
pub mod kronecker;
pub mod linalg;
pub mod report;
pub mod duality;
pub mod relations;
pub mod latin;
pub mod cayley;
pub mod cli;
