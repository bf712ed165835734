//! Multipartite entanglement measures and weighted polygamy inequalities.
//!
//! The crate is organised bottom-up:
//!
//! - [`qcore`]: layouts, validated pure and mixed states, tensor products,
//!   partial traces, Hermitian eigendecomposition and purification.
//! - [`measures`]: von Neumann entropy, entropy of entanglement, tangle and the
//!   closed-form two-qubit concurrences.
//! - [`assisted`]: entanglement of assistance and tangle of assistance, found
//!   by searching pure-state decompositions over the isometry manifold.
//! - [`polyineq`]: Hamming-weight coefficients, subsystem ordering and the
//!   evaluators for the polygamy inequality family.
//! - [`states`]: W, GHZ, product, Haar-random pure and rank-controlled mixed
//!   states.
//! - [`cli`]: config parsing and the experiment runners behind the `polyent`
//!   binary.
//!
//! All logarithms are base 2; entropies are reported in bits.

pub mod assisted;
pub mod cli;
pub mod error;
pub mod measures;
pub mod polyineq;
pub mod qcore;
pub mod rng;
pub mod states;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
