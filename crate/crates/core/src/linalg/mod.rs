//! Dense complex linear algebra: permanents, Haar unitaries and unitary
//! embeddings.

mod embed;
mod haar;
mod matrix;
pub(crate) mod permanent;

pub use embed::{embed_scaled, spectral_norm, Embedding};
pub use haar::{complex_normal, ginibre, haar_unitary};
pub use matrix::ComplexMatrix;
pub use permanent::{
    permanent_fast, permanent_fast_real, permanent_fast_with_threads, permanent_naive, permanent_naive_real,
    PermScalar, FAST_MAX_N, NAIVE_MAX_N,
};
