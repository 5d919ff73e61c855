//! Exact construction of the commuting quantum integrals `H_1, …, H_n` of the
//! semi-infinite q-boson system with boundary interactions, together with the
//! hyperoctahedral Hall–Littlewood polynomials that diagonalise them and a
//! verification harness that checks the defining identities exactly.

pub mod coeffs;
pub mod error;
pub mod hall_littlewood;
pub mod lattice;
pub mod operators;
pub mod laurent;
pub mod params;
pub mod ratfunc;
pub mod rational;
pub mod suite;

pub use error::{Error, Result};
