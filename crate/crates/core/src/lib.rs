//! Exact Schubert calculus on full flag varieties `G/B` and the search for multiplicity-free
//! products of Schubert divisors.

#![allow(clippy::needless_range_loop)]

pub mod candim;
pub mod chow;
pub mod coeff;
pub mod indexed;
pub mod oracle;
pub mod rootsys;
pub mod search;
pub mod weyl;

pub use chow::{ChowError, ChowVector, MultiDegree, SchubertRing};
pub use coeff::{Backend, Coefficient};
pub use num_bigint::BigUint;
pub use rootsys::{CartanDatum, CartanType, Root, RootSystem, RootSystemError};
pub use weyl::WeylElement;

/// Chow vectors with arbitrary-precision coefficients.
pub type ExactChowVector = ChowVector<num_bigint::BigUint>;
/// Chow vectors with overflow-checked 64-bit coefficients.
pub type Chow64 = ChowVector<u64>;
/// Chow vectors with overflow-checked 128-bit coefficients.
pub type Chow128 = ChowVector<u128>;
pub use search::{Engine, SearchConfig, SearchError, SearchOutcome, Witness};
