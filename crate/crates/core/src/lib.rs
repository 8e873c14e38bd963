//! Exact computation of I-adic and balanced filtrations on affine algebras,
//! their associated graded rings, and the periodic completion of the balanced cone.
//!
//! Everything is computed over the rationals with exact arithmetic. Algorithms that
//! can run out of resources take an explicit [`groebner::Budget`] and report
//! exhaustion as an error rather than guessing.

pub mod cli;
pub mod error;
pub mod filtration;
pub mod graded;
pub mod groebner;
pub mod icogr;
pub mod linalg;
pub mod poly;
pub mod toric;

pub use error::{Error, Result};
