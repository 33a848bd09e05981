//! Translational tilings of the integers and factorizations of cyclic groups.
//!
//! * [`polyring`]: exact integer polynomials and cyclotomics.
//! * [`tilingset`]: finite sets, mask polynomials, two-route tiling checks.
//! * [`cmcheck`]: Coven–Meyerowitz spectrum, (T1)/(T2), fiber decompositions.
//! * [`search`]: complement search in `Z_M` and the minimal tiling period.
//! * [`constructions`]: long-period tilings, the diameter counterexample,
//!   standard tiles.
//! * [`corpus`]: exhaustive small-set enumeration with JSON-lines output.

pub mod cmcheck;
pub mod constructions;
pub mod corpus;
pub mod polyring;
pub mod search;
pub mod tilingset;

pub use polyring::{Factorization, IntPolynomial};
pub use tilingset::{CyclicTiling, IntegerSet};
