//! Exact tractor exterior calculus on the flat Poincaré–Einstein collar.
//!
//! All arithmetic is over the rationals. Forms have polynomial coefficients
//! in `(r, x1, .., xn)`, with rational powers of `r` and powers of `log r`
//! allowed where the solvers need them.

pub mod boundary;
pub mod error;
pub mod model;
pub mod num;
pub mod poly;
pub mod random;
pub mod sl2core;
pub mod solver;
pub mod tractor;
pub mod verify;

pub use error::{Error, Result};
