//! Multipartite Hilbert-space plumbing: layouts, states, partial traces,
//! eigendecomposition and purification.

mod layout;
mod linalg;
mod ops;
mod serial;
mod state;

pub use layout::{default_label, Party, SystemLayout};
pub use linalg::{eig_hermitian, hermitian_eigen, hermitian_eigenvalues, MaxAbs, Spectrum, CLAMP_FLOOR};
pub(crate) use linalg::small_eigenvalues;
pub(crate) use ops::IndexSplit;
pub use ops::{partial_trace, purify, reduced_from_pure, tensor_product, tensor_product_pure, RANK_TOL};
pub use serial::{read_state_file, write_state_file, StateFile};
pub use state::{
    DensityMatrix, PureState, QuantumState, StateRef, HERMITIAN_TOL, NORM_TOL, PSD_TOL, TRACE_TOL,
};
