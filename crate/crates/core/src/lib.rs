//! Classical and exceptional orthogonal polynomials computed three ways:
//! product and Wronskian formulas, closed-form integral formulas, and
//! Vandermonde-style determinants built from zeros of classical polynomials.
//!
//! The crate is `no_std` and only needs `alloc`. Exact work happens over
//! big rationals; determinantal evaluation uses complex doubles.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod check;
pub mod classical;
pub mod det;
pub mod poly;
pub mod rootfind;
pub mod xop;
