//! Operators on `V^{(x) n}`: the two-site operators and their position embeddings.
//!
//! Matrix units follow `(E_ij (x) E_kl)(v_a (x) v_b) = delta_ja delta_lb v_i (x) v_k`,
//! and the basis of `V^{(x) n}` is ordered by [`crate::combin::MultiIndex::basis_index`].
//! Words in the two-site operators act on row vectors, composed left to right.

mod matrix;
mod operators;

pub use matrix::SparseMatrix;
pub use operators::{
    bg_residual, beta, beta_hat, beta_prime, beta_prime_word_action, embed_at, gamma, gamma_prime,
    hecke_word_action, pairfree_compatibility_check, relation_bg_check, residual_witness, word_product,
    RhoEps, SpaceConfig, TensorError,
};
