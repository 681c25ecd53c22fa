//! Symbolic F-method kernel.
//!
//! Constructs the covariant holomorphic differential operators attached to
//! the split-rank-one symmetric pairs `SO(n,2) ⊃ SO(n-1,2)`,
//! `Sp(n,R) ⊃ Sp(n-1,R) × Sp(1,R)` and `U(n,1) × U(n,1) ⊃ U(n,1)` by solving
//! the Fourier-transformed singular-vector equations exactly, and checks the
//! results against closed forms built from Jacobi and Gegenbauer
//! polynomials, against a direct intertwining test and against classical
//! Rankin-Cohen brackets of modular forms.
//!
//! All arithmetic is exact over `Q(parameters)`.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod coeff;
pub mod error;
pub mod geometries;
pub mod modforms;
pub mod monomial;
pub mod orthopoly;
pub mod singular;
pub mod weyl;

pub use error::{Error, Result};
