//! Segre products of standard graded algebras: Hilbert series arithmetic,
//! toric presentations, closed-form depth and Cohen-Macaulay criteria for
//! twisted Segre products of Gorenstein algebras, and brute-force truncated
//! module computations used to cross-check them.

#![allow(clippy::needless_range_loop)]

pub mod cohomo;
pub mod oracle;
pub mod series;
pub mod toric;
