//! Exact symbolic engine for the even symplectic supermanifold `T*ΠA`.
//!
//! Functions on `T*ΠA` are [`Expression`]s: normalized sums of graded
//! monomials with rational coefficients. On top of that kernel the crate
//! provides the canonical graded Poisson bracket ([`symplectic`]), Lie
//! bialgebroid and Courant algebroid structure ([`algebroid`]), the
//! double-field-theory C-bracket and strong constraint as derived brackets
//! ([`dft`]), and exact rational matrices for the generalized metric
//! ([`metric`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod algebroid;
pub mod dft;
pub mod metric;
pub mod report;
pub mod section;
pub mod symplectic;

mod print;

pub use algebra::{AlgebraError, Expression, Family, Generator, Monomial, Parity, Rational, RawTerm};
pub use report::{Residual, VerificationReport};
pub use section::Section;
pub use symplectic::{Chart, ChartMode};
