//! Combinatorics of even Coxeter systems: the word problem, nerves, finite
//! truncations of the Davis complex, `(U, T)`-ruins with their boundary collars and
//! colorings, and an integer homology backend.
//!
//! Every object is finite and exact. Infinite complexes are studied through balls
//! of bounded radius in the Cayley graph, and every check reports how many
//! instances it examined.

pub mod cli;
pub mod coxeter;
pub mod davis;
pub mod error;
pub mod fixtures;
pub mod homology;
pub mod nerve;
pub mod ruins;

pub use error::{Error, Result};
